//! Convert Gauss codes into cut-diagrams.
//!
//! A crossing cuts the strand that passes under; the cut-point remembers
//! the sign of the crossing and the region of the over-strand's component
//! it points into.  Once converted, the original over/under data is gone
//! and only the cut-diagram calculus remains.
//!
//! ```sh
//! cargo run --example gauss_codes
//! ```

use cutcalc::gauss::{parse_gauss, parse_gauss_text};
use cutcalc::io::{write_cut, CutFile};

fn main() {
    let samples = [
        ("trefoil", "circle O1+ U2+ O3+ U1+ O2+ U3+"),
        ("hopf", "circle O1+ U2+\ncircle U1+ O2+"),
        (
            "borromean",
            "circle O1+ U2- O4- U5+\ncircle U1+ O3+ U4- O6-\ncircle O2- U3+ O5+ U6-",
        ),
    ];

    for (name, code) in samples {
        println!("== {name} ==");
        for line in code.lines() {
            println!("  {line}");
        }
        let parsed = parse_gauss_text(code).expect("well-formed code");
        let diagram = parse_gauss(&parsed).expect("realizable code");
        println!("becomes:");
        for line in write_cut(&CutFile::new(name, diagram)).lines() {
            println!("  {line}");
        }
        println!();
    }

    // Errors carry enough context to fix the input.
    let broken = "circle O1+ U2+\ncircle U1+";
    match parse_gauss_text(broken).and_then(|c| parse_gauss(&c)) {
        Ok(_) => unreachable!("crossing 2 has no over token"),
        Err(e) => println!("rejected {broken:?}: {e}"),
    }
}
