//! The `.cmov` format: a movie certificate plus boundary diagram names.
//!
//! ```text
//! from whitehead
//! mode reduced
//! to unlink2          # optional
//! events
//! svdeath 2 3
//! pass 2 2 over 1.0
//! max 1 1
//! end
//! ```
//!
//! `from` and `to` name the boundary diagrams (by convention stored next
//! to the movie as `<name>.cut`).  Event lines use the same syntax that
//! [`Event`] displays with.  A file declaring `mode strict` may not
//! contain self-virtualization events; that is a parse error, not a
//! verification failure.

use super::{meaningful_lines, parse_index, parse_region_ref, ParseError};
use crate::concordance::{Certificate, Dir, Event, Mode, OverStrand};

/// A parsed `.cmov` file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CmovFile {
    /// Name of the diagram the movie starts from.
    pub from: String,
    /// Name of the diagram the movie is claimed to end on, if any.
    pub to: Option<String>,
    pub certificate: Certificate,
}

fn parse_dir(line: usize, tok: &str) -> Result<Dir, ParseError> {
    match tok {
        "up" => Ok(Dir::Up),
        "down" => Ok(Dir::Down),
        _ => Err(ParseError::new(
            line,
            format!("expected `up` or `down`, got `{tok}`"),
        )),
    }
}

fn parse_event(lineno: usize, line: &str) -> Result<Event, ParseError> {
    let toks: Vec<&str> = line.split_whitespace().collect();
    let arity = |n: usize| -> Result<(), ParseError> {
        if toks.len() == n {
            Ok(())
        } else {
            Err(ParseError::new(
                lineno,
                format!("`{}` takes {} arguments", toks[0], n - 1),
            ))
        }
    };
    match toks[0] {
        "product" => {
            arity(1)?;
            Ok(Event::Product)
        }
        "vdeath" | "svdeath" => {
            arity(3)?;
            let component = parse_index(lineno, toks[1], "component index")?;
            let position = parse_index(lineno, toks[2], "position")?;
            Ok(if toks[0] == "vdeath" {
                Event::VertexDeath {
                    component,
                    position,
                }
            } else {
                Event::SvDeath {
                    component,
                    position,
                }
            })
        }
        "vbirth" | "svbirth" => {
            arity(5)?;
            let component = parse_index(lineno, toks[1], "component index")?;
            let position = parse_index(lineno, toks[2], "position")?;
            let dir = parse_dir(lineno, toks[3])?;
            let label = parse_region_ref(lineno, toks[4])?;
            Ok(if toks[0] == "vbirth" {
                Event::VertexBirth {
                    component,
                    position,
                    dir,
                    label,
                }
            } else {
                Event::SvBirth {
                    component,
                    position,
                    dir,
                    label,
                }
            })
        }
        "min" => {
            arity(5)?;
            let component = parse_index(lineno, toks[1], "component index")?;
            let position = parse_index(lineno, toks[2], "position")?;
            let dirs = match toks[3] {
                "up-down" => (Dir::Up, Dir::Down),
                "down-up" => (Dir::Down, Dir::Up),
                other => {
                    return Err(ParseError::new(
                        lineno,
                        format!("expected `up-down` or `down-up`, got `{other}`"),
                    ))
                }
            };
            let label = parse_region_ref(lineno, toks[4])?;
            Ok(Event::Min {
                component,
                position,
                dirs,
                label,
            })
        }
        "max" => {
            arity(3)?;
            let component = parse_index(lineno, toks[1], "component index")?;
            let position = parse_index(lineno, toks[2], "position")?;
            Ok(Event::Max {
                component,
                position,
            })
        }
        "pass" => {
            arity(5)?;
            let component = parse_index(lineno, toks[1], "component index")?;
            let position = parse_index(lineno, toks[2], "position")?;
            let over = match toks[3] {
                "over" => OverStrand::Left,
                "under" => OverStrand::Right,
                other => {
                    return Err(ParseError::new(
                        lineno,
                        format!("expected `over` or `under`, got `{other}`"),
                    ))
                }
            };
            let new_label = parse_region_ref(lineno, toks[4])?;
            Ok(Event::Pass {
                component,
                position,
                over,
                new_label,
            })
        }
        other => Err(ParseError::new(lineno, format!("unknown event `{other}`"))),
    }
}

/// Parse the text of a `.cmov` file.
pub fn parse_cmov(text: &str) -> Result<CmovFile, ParseError> {
    let mut from: Option<String> = None;
    let mut to: Option<String> = None;
    let mut mode: Option<Mode> = None;
    let mut events: Vec<Event> = Vec::new();
    let mut in_events = false;
    let mut ended = false;
    let mut last_line = 0;

    for (lineno, line) in meaningful_lines(text) {
        last_line = lineno;
        if ended {
            return Err(ParseError::new(lineno, "content after `end`"));
        }
        if in_events {
            if line == "end" {
                ended = true;
            } else {
                let ev = parse_event(lineno, line)?;
                if ev.is_sv() && mode == Some(Mode::Strict) {
                    return Err(ParseError::new(
                        lineno,
                        "self-virtualization event in a strict movie",
                    ));
                }
                events.push(ev);
            }
            continue;
        }
        let mut toks = line.split_whitespace();
        let head = toks.next().expect("meaningful lines are non-empty");
        let rest: Vec<&str> = toks.collect();
        let one_word = |what: &str| -> Result<String, ParseError> {
            match rest.as_slice() {
                [w] => Ok(w.to_string()),
                _ => Err(ParseError::new(lineno, format!("`{what}` needs one name"))),
            }
        };
        match head {
            "from" => {
                if from.is_some() {
                    return Err(ParseError::new(lineno, "duplicate `from` line"));
                }
                from = Some(one_word("from")?);
            }
            "to" => {
                if to.is_some() {
                    return Err(ParseError::new(lineno, "duplicate `to` line"));
                }
                to = Some(one_word("to")?);
            }
            "mode" => {
                if mode.is_some() {
                    return Err(ParseError::new(lineno, "duplicate `mode` line"));
                }
                mode = Some(match rest.as_slice() {
                    ["strict"] => Mode::Strict,
                    ["reduced"] => Mode::Reduced,
                    _ => {
                        return Err(ParseError::new(
                            lineno,
                            "expected `mode strict` or `mode reduced`",
                        ))
                    }
                });
            }
            "events" => {
                if !rest.is_empty() {
                    return Err(ParseError::new(lineno, "`events` takes no arguments"));
                }
                if from.is_none() {
                    return Err(ParseError::new(lineno, "`events` before `from`"));
                }
                if mode.is_none() {
                    return Err(ParseError::new(lineno, "`events` before `mode`"));
                }
                in_events = true;
            }
            other => {
                return Err(ParseError::new(
                    lineno,
                    format!("unknown directive `{other}`"),
                ));
            }
        }
    }

    let from = from.ok_or_else(|| ParseError::new(last_line.max(1), "missing `from` line"))?;
    let mode = mode.ok_or_else(|| ParseError::new(last_line.max(1), "missing `mode` line"))?;
    if !ended {
        return Err(ParseError::new(last_line.max(1), "missing `end`"));
    }
    Ok(CmovFile {
        from,
        to,
        certificate: Certificate { mode, events },
    })
}

/// Write a movie in canonical `.cmov` form (LF endings, no comments).
pub fn write_cmov(file: &CmovFile) -> String {
    let mut out = format!("from {}\n", file.from);
    out.push_str(&format!("mode {}\n", file.certificate.mode));
    if let Some(to) = &file.to {
        out.push_str(&format!("to {to}\n"));
    }
    out.push_str("events\n");
    for ev in &file.certificate.events {
        out.push_str(&format!("{ev}\n"));
    }
    out.push_str("end\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::RegionRef;

    fn sample() -> CmovFile {
        CmovFile {
            from: "whitehead".into(),
            to: Some("unlink2".into()),
            certificate: Certificate {
                mode: Mode::Reduced,
                events: vec![
                    Event::Product,
                    Event::SvDeath {
                        component: 2,
                        position: 3,
                    },
                    Event::SvBirth {
                        component: 2,
                        position: 2,
                        dir: Dir::Down,
                        label: RegionRef::new(2, 0),
                    },
                    Event::Pass {
                        component: 2,
                        position: 2,
                        over: OverStrand::Left,
                        new_label: RegionRef::new(1, 0),
                    },
                    Event::Min {
                        component: 1,
                        position: 1,
                        dirs: (Dir::Up, Dir::Down),
                        label: RegionRef::new(1, 0),
                    },
                    Event::Max {
                        component: 1,
                        position: 1,
                    },
                    Event::VertexBirth {
                        component: 1,
                        position: 1,
                        dir: Dir::Up,
                        label: RegionRef::new(2, 0),
                    },
                    Event::VertexDeath {
                        component: 1,
                        position: 1,
                    },
                ],
            },
        }
    }

    #[test]
    fn write_then_parse_round_trips() {
        let f = sample();
        assert_eq!(parse_cmov(&write_cmov(&f)).unwrap(), f);
    }

    #[test]
    fn a_strict_movie_may_not_contain_sv_events() {
        let text = "from x\nmode strict\nevents\nsvdeath 1 1\nend\n";
        let err = parse_cmov(text).unwrap_err();
        assert_eq!(err.line, 4);
        assert!(err.message.contains("strict"));
    }

    #[test]
    fn the_to_line_is_optional() {
        let text = "from x\nmode strict\nevents\nproduct\nend\n";
        let f = parse_cmov(text).unwrap();
        assert_eq!(f.to, None);
        assert_eq!(f.certificate.events, vec![Event::Product]);
    }

    #[test]
    fn bad_event_lines_carry_their_line_number() {
        let cases = [
            ("from x\nmode strict\nevents\nexplode 1 1\nend\n", 4),
            (
                "from x\nmode strict\nevents\npass 1 1 sideways 1.0\nend\n",
                4,
            ),
            ("from x\nmode strict\nevents\nmin 1 1 up-up 1.0\nend\n", 4),
            ("from x\nmode strict\nevents\nvdeath 1\nend\n", 4),
            ("from x\nmode strict\nevents\nvbirth 0 1 up 1.0\nend\n", 4),
        ];
        for (text, line) in cases {
            let err = parse_cmov(text).unwrap_err();
            assert_eq!(err.line, line, "{text:?} -> {err}");
        }
    }

    #[test]
    fn headers_must_precede_events() {
        let err = parse_cmov("from x\nevents\nend\n").unwrap_err();
        assert!(err.message.contains("mode"));
        // Header order among themselves is free.
        let f = parse_cmov("mode strict\nfrom x\nevents\nend\n").unwrap();
        assert_eq!(f.from, "x");
    }
}
