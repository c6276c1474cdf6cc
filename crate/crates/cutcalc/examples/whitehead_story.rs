//! The Whitehead link, start to finish.
//!
//! The link is the classic example of a boundary link the pairwise linking
//! numbers cannot see: mu(12) = 0 but mu(1122) = 1, so it is not concordant
//! to the two-component unlink.  Its *reduced* invariants vanish, however,
//! and the calculus makes that concrete: six moves — three of them
//! self-virtualizations — rewrite the diagram into the unlink, and the
//! trace of those moves is a verifiable reduced-mode certificate.
//!
//! ```sh
//! cargo run --example whitehead_story
//! ```

use cutcalc::concordance::{build_sv_trace, build_trace, verify, Report};
use cutcalc::diagram::{ComponentKind, CutDiagram, CutPoint, RegionRef, Sign, Skeleton};
use cutcalc::io::{write_cmov, CmovFile};
use cutcalc::moves::{apply_move, parse_move, Move};
use cutcalc::peripheral::same_invariants;

fn circles(points: Vec<Vec<CutPoint>>) -> CutDiagram {
    let kinds = vec![ComponentKind::Circle; points.len()];
    CutDiagram::new(Skeleton::new(kinds), points)
}

fn main() {
    let whitehead = circles(vec![
        vec![
            CutPoint::new(Sign::Minus, RegionRef::new(2, 0)),
            CutPoint::new(Sign::Plus, RegionRef::new(2, 1)),
        ],
        vec![
            CutPoint::new(Sign::Plus, RegionRef::new(2, 2)),
            CutPoint::new(Sign::Plus, RegionRef::new(1, 0)),
            CutPoint::new(Sign::Minus, RegionRef::new(1, 1)),
        ],
    ]);
    let unlink = circles(vec![vec![], vec![]]);

    // Strictly, the two are different; reduced, they are the same.
    println!(
        "whitehead vs unlink, strict:  {}",
        same_invariants(&whitehead, &unlink, 4, false)
    );
    println!(
        "whitehead vs unlink, reduced: {}",
        same_invariants(&whitehead, &unlink, 4, true)
    );

    // The reduction, one move at a time.
    let reduction: Vec<Move> = [
        "sv-@2:1",
        "sv+@2:1:-:2.0",
        "r3@2:2:second:1.1",
        "sv-@2:3",
        "r2-@2:1",
        "r2-@1:1",
    ]
    .iter()
    .map(|s| parse_move(s).expect("listed moves parse"))
    .collect();

    println!("\nthe six-move reduction:");
    let mut cur = whitehead.clone();
    for m in &reduction {
        cur = apply_move(&cur, m).expect("listed moves apply");
        println!("  {m:<22} -> {} cut-points", cur.cut_point_count());
    }
    assert_eq!(cur, unlink);

    // Self-virtualizations are not concordance moves, so a strict trace
    // refuses the sequence...
    match build_trace(&whitehead, &reduction) {
        Err(e) => println!("\nstrict trace: {e}"),
        Ok(_) => unreachable!("the reduction uses sv moves"),
    }

    // ...but the reduced trace verifies, and lands exactly on the unlink.
    let cert = build_sv_trace(&whitehead, &reduction).expect("reduced trace");
    println!("\nthe certificate it leaves behind:");
    print!(
        "{}",
        write_cmov(&CmovFile {
            from: "whitehead".into(),
            to: Some("unlink2".into()),
            certificate: cert.clone(),
        })
    );
    match verify(&whitehead, &cert, Some(&unlink)) {
        Report::Accepted { .. } => {
            println!("verified: whitehead and the unlink are reduced-concordant")
        }
        Report::Rejected { reason, .. } => println!("BUG: {reason}"),
    }
}
