//! Certificate verification.

use super::state::{LogTuple, Obligation, SliceState};
use super::{Certificate, CutDiagram, Mode, Report};

/// Verifies a certificate starting from `from`, optionally checking that
/// the movie ends on `to`.
///
/// The events are replayed on the slice state; structural errors reject
/// immediately, while rules 1 and 2 are collected as obligations and
/// checked against the final union-find classes.  On acceptance the report
/// carries the final slice read off as a diagram.
pub fn verify(from: &CutDiagram, cert: &Certificate, to: Option<&CutDiagram>) -> Report {
    run(from, cert, to, true)
}

/// Replays a certificate structurally (no rule checks) and returns the two
/// boundary diagrams it connects.
pub fn boundaries(
    from: &CutDiagram,
    cert: &Certificate,
) -> Result<(CutDiagram, CutDiagram), String> {
    match run(from, cert, None, false) {
        Report::Accepted { final_diagram } => Ok((from.clone(), final_diagram)),
        Report::Rejected { reason, .. } => Err(reason),
    }
}

fn run(
    from: &CutDiagram,
    cert: &Certificate,
    to: Option<&CutDiagram>,
    check_rules: bool,
) -> Report {
    let mut state = SliceState::init(from);
    let mut obligations: Vec<Obligation> = Vec::new();
    let mut log: Vec<LogTuple> = Vec::new();
    state.log_tuples(&mut log);
    for (i, ev) in cert.events.iter().enumerate() {
        let idx = i + 1;
        if check_rules && cert.mode == Mode::Strict && ev.is_sv() {
            return Report::Rejected {
                reason: "self-virtualization event in strict mode".into(),
                event: Some(idx),
            };
        }
        if let Err(reason) = state.apply(ev, idx, &mut obligations) {
            return Report::Rejected {
                reason,
                event: Some(idx),
            };
        }
        state.log_tuples(&mut log);
    }
    if check_rules {
        for ob in &obligations {
            match ob {
                Obligation::Rule2 { event, label, gap } => {
                    if !state.uf.same(*label, *gap) {
                        return Report::Rejected {
                            reason: "rule 2: a vertex label does not match its adjacent region"
                                .into(),
                            event: Some(*event),
                        };
                    }
                }
                Obligation::Rule1 {
                    event,
                    a,
                    b,
                    c_label,
                    delta,
                } => {
                    let witnessed = log.iter().any(|t| {
                        state.uf.same(t.label, *c_label)
                            && ((t.sign == *delta
                                && state.uf.same(t.before, *a)
                                && state.uf.same(t.after, *b))
                                || (t.sign == -*delta
                                    && state.uf.same(t.before, *b)
                                    && state.uf.same(t.after, *a)))
                    });
                    if !witnessed {
                        return Report::Rejected {
                            reason: "rule 1: the relabelling at a pass has no witness arc".into(),
                            event: Some(*event),
                        };
                    }
                }
            }
        }
    }
    let final_diagram = match state.read_off() {
        Ok(d) => d,
        Err(reason) => {
            return Report::Rejected {
                reason,
                event: None,
            }
        }
    };
    if let Some(target) = to {
        if let Err(reason) = state.matches(target) {
            return Report::Rejected {
                reason,
                event: None,
            };
        }
    }
    Report::Accepted { final_diagram }
}
