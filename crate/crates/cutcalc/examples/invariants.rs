//! Compute the classical invariant package of a few well-known links:
//! linking matrix, nilpotent peripheral systems, and the table of
//! longitude coefficients with its indeterminacies.
//!
//! ```sh
//! cargo run --example invariants
//! ```

use cutcalc::diagram::{ComponentKind, CutDiagram, CutPoint, RegionRef, Sign, Skeleton};
use cutcalc::magnus::{indeterminacy, milnor_table};
use cutcalc::peripheral::peripheral_system;

fn circles(points: Vec<Vec<CutPoint>>) -> CutDiagram {
    let kinds = vec![ComponentKind::Circle; points.len()];
    CutDiagram::new(Skeleton::new(kinds), points)
}

fn show(name: &str, d: &CutDiagram, maxlen: usize) {
    println!("== {name} ==");
    println!("linking matrix:");
    for row in d.linking_matrix() {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        println!("  {}", cells.join(" "));
    }
    print!("{}", peripheral_system(d, maxlen));
    let table = milnor_table(d, maxlen, false);
    println!("nonzero invariants up to length {maxlen}:");
    let mut any = false;
    for (key, e) in &table.entries {
        if e.value != 0u32.into() {
            any = true;
            if e.modulus == 0u32.into() {
                println!("  mu({key}) = {}", e.value);
            } else {
                println!("  mu({key}) = {} (mod {})", e.value, e.modulus);
            }
        }
    }
    if !any {
        println!("  (none)");
    }
    println!();
}

fn main() {
    // The positive Hopf link: each circle cuts the other once.
    let hopf = circles(vec![
        vec![CutPoint::new(Sign::Plus, RegionRef::new(2, 0))],
        vec![CutPoint::new(Sign::Plus, RegionRef::new(1, 0))],
    ]);
    show("hopf link", &hopf, 3);

    // The Borromean rings: pairwise unlinked, triply linked.  The triple
    // linking shows up as mu(123) = -1 with all pairwise numbers zero.
    let borromean = circles(vec![
        vec![
            CutPoint::new(Sign::Minus, RegionRef::new(3, 0)),
            CutPoint::new(Sign::Plus, RegionRef::new(3, 1)),
        ],
        vec![
            CutPoint::new(Sign::Plus, RegionRef::new(1, 0)),
            CutPoint::new(Sign::Minus, RegionRef::new(1, 1)),
        ],
        vec![
            CutPoint::new(Sign::Plus, RegionRef::new(2, 1)),
            CutPoint::new(Sign::Minus, RegionRef::new(2, 0)),
        ],
    ]);
    show("borromean rings", &borromean, 3);

    // The Whitehead link: linking number zero, first obstruction in
    // length four.  Because component 2 passes through its own regions,
    // the length-four values carry no indeterminacy here.
    let whitehead = circles(vec![
        vec![
            CutPoint::new(Sign::Minus, RegionRef::new(2, 2)),
            CutPoint::new(Sign::Plus, RegionRef::new(2, 0)),
        ],
        vec![
            CutPoint::new(Sign::Plus, RegionRef::new(1, 0)),
            CutPoint::new(Sign::Minus, RegionRef::new(1, 1)),
            CutPoint::new(Sign::Plus, RegionRef::new(2, 1)),
        ],
    ]);
    show("whitehead link", &whitehead, 4);
    println!(
        "indeterminacy of mu(1122) on the whitehead link: {}",
        indeterminacy(&whitehead, 4, &[1, 1, 2, 2])
    );
}
