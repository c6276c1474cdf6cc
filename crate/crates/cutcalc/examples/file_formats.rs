//! Read and write the two on-disk formats.
//!
//! `.cut` files store one named diagram; `.cmov` files store a movie
//! certificate and name its boundary diagrams.  Both are plain text with
//! `#` comments, and both round-trip through their writers.
//!
//! ```sh
//! cargo run --example file_formats
//! ```

use cutcalc::io::{parse_cmov, parse_cut, write_cmov, write_cut};

fn main() {
    let cut_text = "\
# the positive hopf link
diagram hopf
component 1 circle
+ 2.0            # cuts through component 2's basepoint region
component 2 circle
+ 1.0
end
";
    let parsed = parse_cut(cut_text).expect("well-formed file");
    println!(
        "read `{}`: {} components, {} cut-points",
        parsed.name,
        parsed.diagram.component_count(),
        parsed.diagram.cut_point_count()
    );
    println!("canonical form:\n{}", write_cut(&parsed));

    let cmov_text = "\
from hopf
mode strict
events
min 1 1 up-down 2.0   # a trivial excursion: birth of a cancelling pair
max 1 1
product
end
";
    let movie = parse_cmov(cmov_text).expect("well-formed movie");
    println!(
        "read a {} movie from `{}` with {} events",
        movie.certificate.mode,
        movie.from,
        movie.certificate.events.len()
    );
    println!("canonical form:\n{}", write_cmov(&movie));

    // Parse errors carry the offending line.
    let bad_label = "diagram x\ncomponent 1 circle\n+ 1.5\nend\n";
    println!("rejected .cut: {}", parse_cut(bad_label).unwrap_err());
    let sv_in_strict = "from x\nmode strict\nevents\nsvdeath 1 1\nend\n";
    println!("rejected .cmov: {}", parse_cmov(sv_in_strict).unwrap_err());
}
