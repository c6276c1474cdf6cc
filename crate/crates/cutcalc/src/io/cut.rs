//! The `.cut` format: one named diagram per file.
//!
//! ```text
//! diagram hopf
//! component 1 circle
//! + 2.0
//! component 2 circle
//! + 1.0
//! end
//! ```
//!
//! Components must appear in order `1, 2, …`; each `+`/`-` line attaches a
//! cut-point to the most recent component, labels written as `i.j`.

use super::{meaningful_lines, parse_index, parse_region_ref, ParseError};
use crate::diagram::{ComponentKind, CutDiagram, CutPoint, Sign, Skeleton};

/// A named diagram, as stored in a `.cut` file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutFile {
    pub name: String,
    pub diagram: CutDiagram,
}

impl CutFile {
    pub fn new(name: impl Into<String>, diagram: CutDiagram) -> Self {
        CutFile {
            name: name.into(),
            diagram,
        }
    }
}

/// Parse the text of a `.cut` file.
pub fn parse_cut(text: &str) -> Result<CutFile, ParseError> {
    let mut name: Option<String> = None;
    let mut kinds: Vec<ComponentKind> = Vec::new();
    let mut points: Vec<Vec<CutPoint>> = Vec::new();
    let mut point_lines: Vec<Vec<usize>> = Vec::new();
    let mut ended = false;
    let mut last_line = 0;

    for (lineno, line) in meaningful_lines(text) {
        last_line = lineno;
        if ended {
            return Err(ParseError::new(lineno, "content after `end`"));
        }
        let mut toks = line.split_whitespace();
        let head = toks.next().expect("meaningful lines are non-empty");
        match head {
            "diagram" => {
                if name.is_some() {
                    return Err(ParseError::new(lineno, "duplicate `diagram` line"));
                }
                let n = toks
                    .next()
                    .ok_or_else(|| ParseError::new(lineno, "`diagram` needs a name"))?;
                if toks.next().is_some() {
                    return Err(ParseError::new(lineno, "diagram names are single words"));
                }
                name = Some(n.to_string());
            }
            "component" => {
                if name.is_none() {
                    return Err(ParseError::new(lineno, "`component` before `diagram`"));
                }
                let idx_tok = toks
                    .next()
                    .ok_or_else(|| ParseError::new(lineno, "`component` needs an index"))?;
                let idx = parse_index(lineno, idx_tok, "component index")?;
                if idx != kinds.len() + 1 {
                    return Err(ParseError::new(
                        lineno,
                        format!("expected component {}, got {idx}", kinds.len() + 1),
                    ));
                }
                let kind = match toks.next() {
                    Some("circle") => ComponentKind::Circle,
                    Some("interval") => ComponentKind::Interval,
                    Some(other) => {
                        return Err(ParseError::new(
                            lineno,
                            format!("expected `circle` or `interval`, got `{other}`"),
                        ))
                    }
                    None => return Err(ParseError::new(lineno, "`component` needs a kind")),
                };
                if toks.next().is_some() {
                    return Err(ParseError::new(
                        lineno,
                        "trailing tokens after component kind",
                    ));
                }
                kinds.push(kind);
                points.push(Vec::new());
                point_lines.push(Vec::new());
            }
            "+" | "-" => {
                if kinds.is_empty() {
                    return Err(ParseError::new(lineno, "cut-point before any `component`"));
                }
                let sign = if head == "+" { Sign::Plus } else { Sign::Minus };
                let tok = toks
                    .next()
                    .ok_or_else(|| ParseError::new(lineno, "cut-point needs a label `i.j`"))?;
                let label = parse_region_ref(lineno, tok)?;
                if toks.next().is_some() {
                    return Err(ParseError::new(lineno, "trailing tokens after cut-point"));
                }
                points.last_mut().unwrap().push(CutPoint::new(sign, label));
                point_lines.last_mut().unwrap().push(lineno);
            }
            "end" => {
                if name.is_none() {
                    return Err(ParseError::new(lineno, "`end` before `diagram`"));
                }
                ended = true;
            }
            other => {
                return Err(ParseError::new(
                    lineno,
                    format!("unknown directive `{other}`"),
                ));
            }
        }
    }

    let name = name.ok_or_else(|| ParseError::new(last_line.max(1), "missing `diagram` line"))?;
    if !ended {
        return Err(ParseError::new(last_line.max(1), "missing `end`"));
    }

    let diagram = CutDiagram::new(Skeleton::new(kinds), points);
    let report = diagram.validate();
    if let Some(v) = report.violations.first() {
        let line = point_lines[v.component - 1][v.cut_point - 1];
        return Err(ParseError::new(line, v.message.clone()));
    }
    Ok(CutFile::new(name, diagram))
}

/// Write a diagram in canonical `.cut` form (LF endings, no comments).
pub fn write_cut(file: &CutFile) -> String {
    let mut out = format!("diagram {}\n", file.name);
    let d = &file.diagram;
    for c in 1..=d.skeleton.len() {
        out.push_str(&format!("component {c} {}\n", d.skeleton.kind(c)));
        for p in d.component(c) {
            out.push_str(&format!("{} {}\n", p.sign, p.label));
        }
    }
    out.push_str("end\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::RegionRef;

    fn hopf() -> CutFile {
        CutFile::new(
            "hopf",
            CutDiagram::new(
                Skeleton::new(vec![ComponentKind::Circle, ComponentKind::Circle]),
                vec![
                    vec![CutPoint::new(Sign::Plus, RegionRef::new(2, 0))],
                    vec![CutPoint::new(Sign::Plus, RegionRef::new(1, 0))],
                ],
            ),
        )
    }

    #[test]
    fn write_then_parse_round_trips() {
        let f = hopf();
        let text = write_cut(&f);
        assert_eq!(parse_cut(&text).unwrap(), f);
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let text = "# a two-component example\n\ndiagram hopf\ncomponent 1 circle\n+ 2.0 # links component 2\ncomponent 2 circle\n+ 1.0\nend\n";
        assert_eq!(parse_cut(text).unwrap(), hopf());
    }

    #[test]
    fn labels_out_of_range_point_at_their_line() {
        let text = "diagram bad\ncomponent 1 circle\n+ 1.5\nend\n";
        let err = parse_cut(text).unwrap_err();
        assert_eq!(err.line, 3);
    }

    #[test]
    fn structural_errors_carry_line_numbers() {
        let cases = [
            ("diagram x\ncomponent 2 circle\nend\n", 2),
            ("diagram x\ncomponent 1 torus\nend\n", 2),
            ("diagram x\n+ 1.0\nend\n", 2),
            ("diagram x\ncomponent 1 circle\nend\nextra\n", 4),
            ("component 1 circle\nend\n", 1),
        ];
        for (text, line) in cases {
            let err = parse_cut(text).unwrap_err();
            assert_eq!(err.line, line, "{text:?} -> {err}");
        }
    }

    #[test]
    fn a_missing_end_is_an_error() {
        let err = parse_cut("diagram x\ncomponent 1 circle\n").unwrap_err();
        assert!(err.message.contains("end"));
    }
}
