//! Command-line front end.
//!
//! Exit codes: `0` success (parsed / equal / accepted), `2` bad input or
//! usage, `3` invariants differ, `4` certificate rejected.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use cutcalc::chen::nilpotent_presentation;
use cutcalc::concordance::{build_slice, build_sv_trace, build_trace, verify, Mode, Report};
use cutcalc::diagram::{ComponentKind, CutDiagram, CutPoint, RegionRef, Sign, Skeleton};
use cutcalc::gauss::{parse_gauss, parse_gauss_text};
use cutcalc::io::{parse_cmov, parse_cut, write_cmov, write_cut, CmovFile, CutFile};
use cutcalc::magnus::milnor_table;
use cutcalc::moves::{
    apply_move, parse_move, random_diagram, random_walk, Move, ALL_KINDS, CLASSICAL_KINDS,
};
use cutcalc::peripheral::{peripheral_system, reduced_peripheral, same_invariants, Verdict};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Parser)]
#[command(
    name = "cutcalc",
    version,
    about = "A calculus of one-dimensional cut-diagrams"
)]
struct Cli {
    /// Output style: prose or stable machine-readable lines.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CliMode {
    /// Honest invariants / genuine concordance.
    Strict,
    /// Repeated-index information discarded / self-virtualization allowed.
    Reduced,
}

impl From<CliMode> for Mode {
    fn from(m: CliMode) -> Mode {
        match m {
            CliMode::Strict => Mode::Strict,
            CliMode::Reduced => Mode::Reduced,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Read a diagram (`.cut`, or a Gauss code otherwise) and echo it in
    /// canonical `.cut` form.
    Parse { file: PathBuf },
    /// Print the invariants of a diagram: linking matrix, group, peripheral
    /// system, and the table of longitude coefficients.
    Invariants {
        file: PathBuf,
        /// Longest index sequence kept in the table.
        #[arg(long, default_value_t = 4)]
        maxlen: usize,
        /// Nilpotence level of the printed peripheral system.
        #[arg(long, default_value_t = 4)]
        q: usize,
        /// Which table to print.
        #[arg(long, value_enum, default_value_t = CliMode::Strict)]
        mode: CliMode,
    },
    /// Compare the invariant tables of two diagrams (exit 3 when they
    /// disagree past the indeterminacies).
    Compare {
        left: PathBuf,
        right: PathBuf,
        #[arg(long, default_value_t = 4)]
        maxlen: usize,
        /// Which tables to compare.
        #[arg(long, value_enum, default_value_t = CliMode::Strict)]
        mode: CliMode,
    },
    /// Scramble diagrams with random moves and check the tables survive
    /// (exit 3 on a violation — that would be a bug).
    Fuzz {
        /// Start from this diagram instead of random ones.
        file: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Moves per walk.
        #[arg(long, default_value_t = 20)]
        steps: usize,
        /// Number of walks.
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 4)]
        maxlen: usize,
        /// Mix in self-virtualization moves and check the reduced table.
        #[arg(long)]
        sv: bool,
    },
    /// Build the movie that caps every cut-point of a diagram and verify it
    /// (exit 4 when the diagram is not visibly slice).
    Slice { file: PathBuf },
    /// Turn a move sequence into a verified movie certificate.
    Trace {
        file: PathBuf,
        /// Moves like `r2-@1:1` or `r3@2:2:second:1.1`, applied in order.
        moves: Vec<String>,
        /// Allow self-virtualization moves (the movie becomes reduced-mode).
        #[arg(long)]
        sv: bool,
    },
    /// Check a movie certificate against its boundary diagrams
    /// (`<name>.cut` next to the movie; exit 4 when rejected).
    Verify {
        file: PathBuf,
        /// Check the final slice against this diagram (overrides the
        /// movie's `to` header).
        #[arg(long)]
        to: Option<PathBuf>,
        /// Override the mode the movie is checked under.
        #[arg(long, value_enum)]
        mode: Option<CliMode>,
    },
    /// Write a small corpus of diagrams and movies into a directory.
    Demo { dir: PathBuf },
}

fn main() -> ExitCode {
    // Die quietly when the consumer closes the pipe (`cutcalc … | head`).
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let fmt = cli.format;
    let result = match cli.command {
        Cmd::Parse { file } => cmd_parse(&file, fmt),
        Cmd::Invariants {
            file,
            maxlen,
            q,
            mode,
        } => cmd_invariants(&file, maxlen, q, mode, fmt),
        Cmd::Compare {
            left,
            right,
            maxlen,
            mode,
        } => cmd_compare(&left, &right, maxlen, mode, fmt),
        Cmd::Fuzz {
            file,
            seed,
            steps,
            count,
            maxlen,
            sv,
        } => cmd_fuzz(file.as_deref(), seed, steps, count, maxlen, sv, fmt),
        Cmd::Slice { file } => cmd_slice(&file, fmt),
        Cmd::Trace { file, moves, sv } => cmd_trace(&file, &moves, sv, fmt),
        Cmd::Verify { file, to, mode } => cmd_verify(&file, to.as_deref(), mode, fmt),
        Cmd::Demo { dir } => cmd_demo(&dir, fmt),
    };
    match result {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

// ---------------------------------------------------------------------------
// Input handling.
// ---------------------------------------------------------------------------

/// Reads a diagram file: `.cut` syntax for `.cut` paths, a Gauss code for
/// anything else.  The file stem names Gauss-code diagrams.
fn load_diagram(path: &Path) -> Result<CutFile, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    if path.extension().is_some_and(|e| e == "cut") {
        parse_cut(&text).map_err(|e| format!("{}: {e}", path.display()))
    } else {
        let code = parse_gauss_text(&text).map_err(|e| format!("{}: {e}", path.display()))?;
        let diagram = parse_gauss(&code).map_err(|e| format!("{}: {e}", path.display()))?;
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "diagram".to_string());
        Ok(CutFile::new(name, diagram))
    }
}

fn load_cmov(path: &Path) -> Result<CmovFile, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_cmov(&text).map_err(|e| format!("{}: {e}", path.display()))
}

/// Resolves a boundary name of a movie to `<name>.cut` next to the movie.
fn sibling_diagram(cmov_path: &Path, name: &str) -> Result<CutFile, String> {
    let dir = cmov_path.parent().unwrap_or_else(|| Path::new("."));
    let path = dir.join(format!("{name}.cut"));
    if !path.exists() {
        return Err(format!(
            "{}: boundary diagram `{name}` not found (expected {})",
            cmov_path.display(),
            path.display()
        ));
    }
    load_diagram(&path)
}

// ---------------------------------------------------------------------------
// Subcommands.
// ---------------------------------------------------------------------------

fn cmd_parse(file: &Path, fmt: Format) -> Result<ExitCode, String> {
    let f = load_diagram(file)?;
    print!("{}", write_cut(&f));
    if fmt == Format::Text {
        eprintln!(
            "ok: {} has {} components and {} cut-points",
            f.name,
            f.diagram.component_count(),
            f.diagram.cut_point_count()
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_invariants(
    file: &Path,
    maxlen: usize,
    q: usize,
    mode: CliMode,
    fmt: Format,
) -> Result<ExitCode, String> {
    if maxlen == 0 || q < 2 {
        return Err("--maxlen must be at least 1 and --q at least 2".into());
    }
    let f = load_diagram(file)?;
    let d = &f.diagram;
    let reduced = mode == CliMode::Reduced;
    let table = milnor_table(d, maxlen, reduced);
    let lk = d.linking_matrix();
    let n = d.component_count();

    match fmt {
        Format::Machine => {
            println!("name {}", f.name);
            println!("components {n}");
            let kinds: Vec<String> = (1..=n).map(|c| d.skeleton.kind(c).to_string()).collect();
            println!("kinds {}", kinds.join(" "));
            println!("cutpoints {}", d.cut_point_count());
            for i in 1..=n {
                for j in (i + 1)..=n {
                    println!("lk {i} {j} {}", lk[i - 1][j - 1]);
                }
            }
            let sys = peripheral_system(d, q);
            for p in &sys.pairs {
                println!("meridian {} {}", p.component, p.meridian.fmt_with("R"));
                println!("longitude {} {}", p.component, p.longitude.fmt_with("R"));
            }
            for (key, e) in &table.entries {
                println!("mu {key} {} {}", e.value, e.modulus);
            }
        }
        Format::Text => {
            let kinds: Vec<String> = (1..=n).map(|c| d.skeleton.kind(c).to_string()).collect();
            println!(
                "diagram {}: {n} components ({}), {} cut-points",
                f.name,
                kinds.join(" "),
                d.cut_point_count()
            );
            println!("linking matrix:");
            for row in &lk {
                let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                println!("  {}", cells.join(" "));
            }
            let pres = cutcalc::group::presentation(d);
            println!(
                "group: {} generators, {} relations",
                pres.generators.len(),
                pres.relations.len()
            );
            print!("{}", peripheral_system(d, q));
            let nil = nilpotent_presentation(d, q);
            if !nil.peripheral_relations.is_empty() {
                println!("peripheral commutation relations at level {q}:");
                for (c, l, _) in &nil.peripheral_relations {
                    println!("  [R{c}, {}]", l.fmt_with("R"));
                }
            }
            if reduced {
                print!("{}", reduced_peripheral(d, maxlen));
            }
            println!(
                "invariant table up to length {maxlen} ({mode_name}):",
                mode_name = Mode::from(mode)
            );
            if table.entries.is_empty() {
                println!("  (empty)");
            } else {
                for (key, e) in &table.entries {
                    if e.modulus == 0u32.into() {
                        println!("  {key} : {}", e.value);
                    } else {
                        println!("  {key} : {} (mod {})", e.value, e.modulus);
                    }
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_compare(
    left: &Path,
    right: &Path,
    maxlen: usize,
    mode: CliMode,
    fmt: Format,
) -> Result<ExitCode, String> {
    let l = load_diagram(left)?;
    let r = load_diagram(right)?;
    let reduced = mode == CliMode::Reduced;
    let verdict = same_invariants(&l.diagram, &r.diagram, maxlen, reduced);
    let code = if verdict.is_equal() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    };
    match fmt {
        Format::Text => println!(
            "{} vs {} (length {maxlen}, {}): {verdict}",
            l.name,
            r.name,
            Mode::from(mode)
        ),
        Format::Machine => match &verdict {
            Verdict::Equal => println!("equal"),
            Verdict::Differ(d) => {
                println!(
                    "differ {} {} {} {}",
                    d.key,
                    d.left.value,
                    d.right.value,
                    d.left.modulus.clone().max(d.right.modulus.clone())
                )
            }
            Verdict::Incomparable {
                left_components,
                right_components,
            } => println!("incomparable {left_components} {right_components}"),
        },
    }
    Ok(code)
}

fn cmd_fuzz(
    file: Option<&Path>,
    seed: u64,
    steps: usize,
    count: usize,
    maxlen: usize,
    sv: bool,
    fmt: Format,
) -> Result<ExitCode, String> {
    let start = file.map(load_diagram).transpose()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let kinds: &[_] = if sv { &ALL_KINDS } else { &CLASSICAL_KINDS };
    let mut failed = false;

    for walk in 1..=count {
        let d0 = match &start {
            Some(f) => f.diagram.clone(),
            None => random_diagram(&mut rng, 3, 8),
        };
        let (end, moves) = random_walk(&d0, &mut rng, steps, kinds);
        // The reduced table must survive any walk; the strict table must
        // survive walks without self-virtualization moves.
        let mut watched = vec![true];
        if !sv {
            watched.push(false);
        }
        let mut violation = None;
        for &reduced in &watched {
            let before = milnor_table(&d0, maxlen, reduced);
            let after = milnor_table(&end, maxlen, reduced);
            if let Some(d) = before.first_disagreement(&after) {
                violation = Some((reduced, d));
                break;
            }
        }
        match violation {
            None => match fmt {
                Format::Text => println!(
                    "walk {walk}: {} moves, ends with {} cut-points, tables unchanged",
                    moves.len(),
                    end.cut_point_count()
                ),
                Format::Machine => println!("walk {walk} ok {}", moves.len()),
            },
            Some((reduced, disagreement)) => {
                failed = true;
                let step = first_offending_step(&d0, &moves, maxlen, reduced);
                match fmt {
                    Format::Text => println!(
                        "walk {walk}: table changed at {} — step {step} ({}) is not invariant",
                        disagreement,
                        moves[step - 1]
                    ),
                    Format::Machine => println!(
                        "walk {walk} fail step {step} move {} key {}",
                        moves[step - 1],
                        disagreement.key
                    ),
                }
            }
        }
    }

    if failed {
        if fmt == Format::Machine {
            println!("result fail");
        }
        Ok(ExitCode::from(3))
    } else {
        match fmt {
            Format::Text => println!("all {count} walks preserve the table"),
            Format::Machine => println!("result ok"),
        }
        Ok(ExitCode::SUCCESS)
    }
}

/// Replays a walk one move at a time and returns the 1-based index of the
/// first move that changes the table.
fn first_offending_step(d0: &CutDiagram, moves: &[Move], maxlen: usize, reduced: bool) -> usize {
    let mut cur = d0.clone();
    let mut table = milnor_table(&cur, maxlen, reduced);
    for (i, m) in moves.iter().enumerate() {
        cur = apply_move(&cur, m).expect("walk moves replay");
        let next = milnor_table(&cur, maxlen, reduced);
        if table.first_disagreement(&next).is_some() {
            return i + 1;
        }
        table = next;
    }
    moves.len().max(1)
}

fn report_outcome(report: &Report, fmt: Format) -> ExitCode {
    match fmt {
        Format::Text => eprintln!("{report}"),
        Format::Machine => match report {
            Report::Accepted { final_diagram } => {
                eprintln!("accepted {}", final_diagram.cut_point_count())
            }
            Report::Rejected { reason, event } => match event {
                Some(i) => eprintln!("rejected {i} {reason}"),
                None => eprintln!("rejected - {reason}"),
            },
        },
    }
    if report.is_accepted() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(4)
    }
}

fn cmd_slice(file: &Path, fmt: Format) -> Result<ExitCode, String> {
    let f = load_diagram(file)?;
    let cert = build_slice(&f.diagram);
    let report = verify(&f.diagram, &cert, None);
    print!(
        "{}",
        write_cmov(&CmovFile {
            from: f.name.clone(),
            to: None,
            certificate: cert,
        })
    );
    Ok(report_outcome(&report, fmt))
}

fn cmd_trace(file: &Path, moves: &[String], sv: bool, fmt: Format) -> Result<ExitCode, String> {
    if moves.is_empty() {
        return Err("no moves given".into());
    }
    let f = load_diagram(file)?;
    let parsed: Vec<Move> = moves
        .iter()
        .map(|s| parse_move(s).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    let cert = if sv {
        build_sv_trace(&f.diagram, &parsed)
    } else {
        build_trace(&f.diagram, &parsed)
    }
    .map_err(|e| e.to_string())?;
    let report = verify(&f.diagram, &cert, None);
    print!(
        "{}",
        write_cmov(&CmovFile {
            from: f.name.clone(),
            to: None,
            certificate: cert,
        })
    );
    Ok(report_outcome(&report, fmt))
}

fn cmd_verify(
    file: &Path,
    to_path: Option<&Path>,
    mode: Option<CliMode>,
    fmt: Format,
) -> Result<ExitCode, String> {
    let movie = load_cmov(file)?;
    let from = sibling_diagram(file, &movie.from)?;
    let to = match to_path {
        Some(p) => Some(load_diagram(p)?),
        None => movie
            .to
            .as_ref()
            .map(|name| sibling_diagram(file, name))
            .transpose()?,
    };
    let cert = match mode {
        Some(m) => movie.certificate.with_mode(m.into()),
        None => movie.certificate.clone(),
    };
    let report = verify(&from.diagram, &cert, to.as_ref().map(|f| &f.diagram));
    Ok(report_outcome(&report, fmt))
}

// ---------------------------------------------------------------------------
// Demo corpus.
// ---------------------------------------------------------------------------

fn circle_points(points: Vec<Vec<CutPoint>>) -> CutDiagram {
    let kinds = vec![ComponentKind::Circle; points.len()];
    CutDiagram::new(Skeleton::new(kinds), points)
}

fn cmd_demo(dir: &Path, fmt: Format) -> Result<ExitCode, String> {
    fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
    let mut written = Vec::new();
    let mut save = |name: &str, contents: String| -> Result<(), String> {
        let path = dir.join(name);
        fs::write(&path, contents).map_err(|e| format!("{}: {e}", path.display()))?;
        written.push(path.display().to_string());
        Ok(())
    };

    // Diagrams.  The three classical examples come from Gauss codes; the
    // Whitehead diagram uses a self-referencing label, so it is written
    // directly.
    let gauss = [
        ("hopf", "circle O1+ U2+\ncircle U1+ O2+"),
        ("trefoil", "circle O1+ U2+ O3+ U1+ O2+ U3+"),
        (
            "borromean",
            "circle O1+ U2- O4- U5+\ncircle U1+ O3+ U4- O6-\ncircle O2- U3+ O5+ U6-",
        ),
    ];
    let mut diagrams = Vec::new();
    for (name, code) in gauss {
        let d = parse_gauss(&parse_gauss_text(code).expect("demo code")).expect("demo diagram");
        save(&format!("{name}.gauss"), format!("{code}\n"))?;
        diagrams.push((name, d));
    }
    let whitehead = circle_points(vec![
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
    let unlink2 = circle_points(vec![vec![], vec![]]);
    diagrams.push(("whitehead", whitehead.clone()));
    diagrams.push(("unlink2", unlink2));
    for (name, d) in &diagrams {
        save(
            &format!("{name}.cut"),
            write_cut(&CutFile::new(*name, d.clone())),
        )?;
    }

    // Movies.  The Whitehead link reduces to the unlink in six moves once
    // self-virtualization is allowed; its trace is a reduced-mode movie.
    let reduction = [
        "sv-@2:1",
        "sv+@2:1:-:2.0",
        "r3@2:2:second:1.1",
        "sv-@2:3",
        "r2-@2:1",
        "r2-@1:1",
    ];
    let parsed: Vec<Move> = reduction
        .iter()
        .map(|s| parse_move(s).expect("demo move"))
        .collect();
    let cert = build_sv_trace(&whitehead, &parsed).expect("demo trace");
    save(
        "whitehead-reduced.cmov",
        write_cmov(&CmovFile {
            from: "whitehead".into(),
            to: Some("unlink2".into()),
            certificate: cert,
        }),
    )?;
    // Capping the trefoil works; capping the Hopf link breaks rule 2, so
    // verifying `hopf-slice.cmov` exits with code 4.
    for name in ["trefoil", "hopf"] {
        let d = &diagrams.iter().find(|(n, _)| *n == name).unwrap().1;
        save(
            &format!("{name}-slice.cmov"),
            write_cmov(&CmovFile {
                from: name.into(),
                to: None,
                certificate: build_slice(d),
            }),
        )?;
    }

    match fmt {
        Format::Text => {
            println!("wrote {} files into {}:", written.len(), dir.display());
            for w in &written {
                println!("  {w}");
            }
            println!("try:");
            println!("  cutcalc invariants {}/whitehead.cut", dir.display());
            println!(
                "  cutcalc compare {0}/whitehead.cut {0}/unlink2.cut",
                dir.display()
            );
            println!(
                "  cutcalc compare --mode reduced {0}/whitehead.cut {0}/unlink2.cut",
                dir.display()
            );
            println!("  cutcalc verify {}/whitehead-reduced.cmov", dir.display());
            println!(
                "  cutcalc verify {}/hopf-slice.cmov  # exits 4",
                dir.display()
            );
        }
        Format::Machine => {
            for w in &written {
                println!("wrote {w}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
