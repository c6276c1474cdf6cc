//! Certify that a diagram bounds — or catch it failing to.
//!
//! A movie certificate lists the events a slice of the product surface
//! passes through.  `build_slice` proposes the naive movie that caps every
//! cut-point with a vertex; the verifier replays it and checks each vertex
//! dies in the region its label names (rule 2).  The trefoil's cut-points
//! all point at their own component, so it caps off; the Hopf link's
//! first vertex dies in the wrong region and the movie is rejected.
//!
//! ```sh
//! cargo run --example slice_movie
//! ```

use cutcalc::concordance::{build_slice, verify, Report};
use cutcalc::diagram::{ComponentKind, CutDiagram, CutPoint, RegionRef, Sign, Skeleton};
use cutcalc::io::{write_cmov, CmovFile};

fn main() {
    let trefoil = CutDiagram::new(
        Skeleton::new(vec![ComponentKind::Circle]),
        vec![vec![
            CutPoint::new(Sign::Plus, RegionRef::new(1, 2)),
            CutPoint::new(Sign::Plus, RegionRef::new(1, 0)),
            CutPoint::new(Sign::Plus, RegionRef::new(1, 1)),
        ]],
    );
    let hopf = CutDiagram::new(
        Skeleton::new(vec![ComponentKind::Circle, ComponentKind::Circle]),
        vec![
            vec![CutPoint::new(Sign::Plus, RegionRef::new(2, 0))],
            vec![CutPoint::new(Sign::Plus, RegionRef::new(1, 0))],
        ],
    );

    for (name, d) in [("trefoil", &trefoil), ("hopf", &hopf)] {
        let cert = build_slice(d);
        println!("== movie for {name} ==");
        print!(
            "{}",
            write_cmov(&CmovFile {
                from: name.into(),
                to: None,
                certificate: cert.clone(),
            })
        );
        match verify(d, &cert, None) {
            Report::Accepted { final_diagram } => println!(
                "accepted: ends on a diagram with {} cut-points\n",
                final_diagram.cut_point_count()
            ),
            Report::Rejected { reason, event } => println!(
                "rejected at event {}: {reason}\n",
                event.map_or("-".to_string(), |e| e.to_string())
            ),
        }
    }

    // Every cut-diagram of a knot (one circle) caps off this way: the
    // labels have nowhere to point but their own component.
    println!("knots are always slice in this calculus; links are the story");
}
