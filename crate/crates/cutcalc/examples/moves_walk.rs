//! Rewrite a diagram with the local moves and watch the invariants hold
//! still.
//!
//! The four families — kinks (r1), cancelling pairs (r2), slides across a
//! witness (r3), and self-virtualizations (sv) — generate the equivalence
//! the invariant table is built for: the strict table survives r-moves,
//! and the reduced table survives sv-moves too.
//!
//! ```sh
//! cargo run --example moves_walk
//! ```

use cutcalc::diagram::{ComponentKind, CutDiagram, CutPoint, RegionRef, Sign, Skeleton};
use cutcalc::magnus::milnor_table;
use cutcalc::moves::{
    apply_move, enumerate_moves, random_walk, ALL_KINDS, CLASSICAL_KINDS, SV_KINDS,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let hopf = CutDiagram::new(
        Skeleton::new(vec![ComponentKind::Circle, ComponentKind::Circle]),
        vec![
            vec![CutPoint::new(Sign::Plus, RegionRef::new(2, 0))],
            vec![CutPoint::new(Sign::Plus, RegionRef::new(1, 0))],
        ],
    );

    // Every legal move on the Hopf diagram, by family.
    for (label, kinds) in [
        ("classical", &CLASSICAL_KINDS[..]),
        ("self-virtualization", &SV_KINDS[..]),
    ] {
        let moves = enumerate_moves(&hopf, kinds);
        println!("{} {label} moves on the hopf diagram, e.g.:", moves.len());
        for m in moves.iter().take(4) {
            let next = apply_move(&hopf, m).expect("enumerated moves apply");
            println!("  {m}  ->  {} cut-points", next.cut_point_count());
        }
    }

    // A long seeded scramble leaves the table alone.
    let before = milnor_table(&hopf, 4, false);
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let (scrambled, walk) = random_walk(&hopf, &mut rng, 40, &CLASSICAL_KINDS);
    println!(
        "\nafter 40 random classical moves ({} cut-points):",
        scrambled.cut_point_count()
    );
    for m in walk.iter().take(6) {
        println!("  {m}");
    }
    println!("  ...");
    let after = milnor_table(&scrambled, 4, false);
    match before.first_disagreement(&after) {
        None => println!("strict table unchanged, as it must be"),
        Some(d) => println!("BUG: table changed at {d}"),
    }

    // Self-virtualizations may change the strict table, but never the
    // reduced one.
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (virtualized, _) = random_walk(&hopf, &mut rng, 20, &ALL_KINDS);
    let strict_changed = milnor_table(&hopf, 4, false)
        .first_disagreement(&milnor_table(&virtualized, 4, false))
        .is_some();
    let reduced_changed = milnor_table(&hopf, 4, true)
        .first_disagreement(&milnor_table(&virtualized, 4, true))
        .is_some();
    println!(
        "\nafter 20 moves including sv: strict table changed: {strict_changed}, reduced table changed: {reduced_changed}"
    );
}
