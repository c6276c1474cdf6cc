//! Work with the group of a diagram and its nilpotent quotients.
//!
//! The group has one generator per region and one conjugation relation per
//! cut-point.  Collapsing regions along a road network gives the Chen
//! homomorphism onto the free group on the components, exact below the
//! chosen nilpotence level; longitudes land in deeper and deeper terms of
//! the lower central series exactly when invariants vanish.
//!
//! ```sh
//! cargo run --example presentations
//! ```

use cutcalc::chen::{chen_longitude, nilpotent_presentation, RoadNetwork};
use cutcalc::diagram::{ComponentKind, CutDiagram, CutPoint, RegionRef, Sign, Skeleton};
use cutcalc::group::{longitude, meridian, presentation};
use cutcalc::magnus::in_lcs;
use cutcalc::word::Word;

fn main() {
    let borromean = CutDiagram::new(
        Skeleton::new(vec![ComponentKind::Circle; 3]),
        vec![
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
        ],
    );

    // The raw presentation: generators are regions, one relation per
    // cut-point.
    let pres = presentation(&borromean);
    println!(
        "group of the borromean rings: {} generators, {} relations",
        pres.generators.len(),
        pres.relations.len()
    );
    for (r, rel) in pres.generators.iter().zip(&pres.relations) {
        println!("  at {r}: {rel} = 1");
    }

    // Meridian and longitude of component 1, still in region generators.
    println!("\nperipheral words of component 1 (region generators):");
    println!("  meridian:  {}", meridian(&borromean, 1));
    println!("  longitude: {}", longitude(&borromean, 1));

    // The Chen map collapses each region to its component's meridian,
    // correcting by road words; the longitude becomes a commutator.
    let net = RoadNetwork::canonical(&borromean);
    for q in [2, 3, 4] {
        let l1 = chen_longitude(&borromean, &net, q, 1);
        println!("level {q}: longitude 1 -> {}", l1.fmt_with("R"));
    }

    // Longitudes of the rings live exactly two steps down the lower
    // central series of the free group: that is triple linking.
    let net = RoadNetwork::canonical(&borromean);
    let l1 = chen_longitude(&borromean, &net, 4, 1);
    println!(
        "\nlongitude 1 in LCS_2: {}, in LCS_3: {}, in LCS_4: {}",
        in_lcs(&l1, 2),
        in_lcs(&l1, 3),
        in_lcs(&l1, 4)
    );

    // A commutator calculus sanity check: [R1, [R2, R3]] has weight 3.
    let c: Word<usize> =
        Word::generator(1, 1).commutator(&Word::generator(2, 1).commutator(&Word::generator(3, 1)));
    println!(
        "[R1,[R2,R3]] in LCS_3: {}, in LCS_4: {}",
        in_lcs(&c, 3),
        in_lcs(&c, 4)
    );

    // The finished peripheral package: nilpotent quotient plus one
    // commutation relation per component.
    let nil = nilpotent_presentation(&borromean, 3);
    println!(
        "\nnilpotent presentation at level {}: free on {} meridians, modulo LCS_{} and:",
        nil.level, nil.generator_count, nil.level
    );
    for (c, l, _) in &nil.peripheral_relations {
        println!("  [R{c}, {}] = 1", l.fmt_with("R"));
    }
}
