//! Certificate builders.
//!
//! [`build_slice`] writes the movie that cones a diagram off by killing
//! every cut-point in place — it is accepted exactly when the diagram
//! bounds that way (e.g. when every label dies into its own region class).
//! [`build_trace`] and [`build_sv_trace`] translate a sequence of valid
//! moves into the corresponding movie, which the verifier always accepts:
//! each move's applicability condition is precisely what the matching
//! event's rule needs.

use super::{Certificate, Dir, Event, Mode, OverStrand};
use crate::diagram::{CutDiagram, RegionRef};
use crate::moves::{apply_move, split_parts, Move, MoveError, PairHalf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BuildError {
    #[error("move {index} cannot be applied: {source}")]
    BadMove { index: usize, source: MoveError },
    #[error("move {index} is a self-virtualization, not allowed in a strict trace")]
    SvInStrict { index: usize },
}

/// The movie that kills every cut-point of `d` in place, bottom-up.
pub fn build_slice(d: &CutDiagram) -> Certificate {
    let mut events = Vec::new();
    for c in 1..=d.component_count() {
        for _ in 0..d.component(c).len() {
            events.push(Event::VertexDeath {
                component: c,
                position: 1,
            });
        }
    }
    Certificate {
        mode: Mode::Strict,
        events,
    }
}

/// Translates classical moves into a strict certificate.
pub fn build_trace(from: &CutDiagram, moves: &[Move]) -> Result<Certificate, BuildError> {
    trace(from, moves, Mode::Strict)
}

/// Translates any moves (self-virtualizations included) into a reduced
/// certificate.
pub fn build_sv_trace(from: &CutDiagram, moves: &[Move]) -> Result<Certificate, BuildError> {
    trace(from, moves, Mode::Reduced)
}

fn trace(from: &CutDiagram, moves: &[Move], mode: Mode) -> Result<Certificate, BuildError> {
    let mut cur = from.clone();
    let mut events = Vec::new();
    for (i, m) in moves.iter().enumerate() {
        let index = i + 1;
        if mode == Mode::Strict && matches!(m, Move::SvPlus { .. } | Move::SvMinus { .. }) {
            return Err(BuildError::SvInStrict { index });
        }
        let next = apply_move(&cur, m).map_err(|source| BuildError::BadMove { index, source })?;
        events.push(event_for(&cur, &next, m));
        cur = next;
    }
    Ok(Certificate { mode, events })
}

/// The region reference that becomes `post` after inserting `inserted`
/// cut-points at `slot` of component `c`; `None` only for the fresh middle
/// region of a pair insertion.
fn pre_insert_region(
    d: &CutDiagram,
    c: usize,
    slot: usize,
    inserted: usize,
    post: RegionRef,
) -> Option<RegionRef> {
    use crate::diagram::ComponentKind;
    if post.component != c {
        return Some(post);
    }
    let kind = d.skeleton.kind(c);
    let k = d.component(c).len();
    let (sigma, first, middle, second) = split_parts(kind, k, slot, inserted);
    let t = post.region;
    if inserted == 2 && t == middle {
        return None;
    }
    if t == first || t == second {
        return Some(RegionRef::new(c, sigma));
    }
    let pre = match kind {
        ComponentKind::Circle if k == 0 => 0,
        ComponentKind::Circle if slot == k => t,
        _ => {
            if t < slot {
                t
            } else {
                t - inserted
            }
        }
    };
    Some(RegionRef::new(c, pre))
}

/// The event matching an already-validated move; `d` is the diagram before
/// the move and `next` the diagram after it.
fn event_for(d: &CutDiagram, next: &CutDiagram, m: &Move) -> Event {
    match m {
        Move::R1Plus {
            component,
            slot,
            sign,
            ..
        } => {
            let (sigma, _, _, _) = split_parts(
                d.skeleton.kind(*component),
                d.component(*component).len(),
                *slot,
                1,
            );
            Event::VertexBirth {
                component: *component,
                position: slot + 1,
                dir: Dir::from_sign(*sign),
                label: RegionRef::new(*component, sigma),
            }
        }
        Move::R1Minus {
            component,
            position,
        } => Event::VertexDeath {
            component: *component,
            position: *position,
        },
        Move::R2Plus {
            component,
            slot,
            first_sign,
            label,
            ..
        } => {
            let pre = pre_insert_region(d, *component, *slot, 2, *label)
                .expect("pair label cannot be the fresh middle region");
            let first = Dir::from_sign(*first_sign);
            Event::Min {
                component: *component,
                position: slot + 1,
                dirs: (first, first.opposite()),
                label: pre,
            }
        }
        Move::R2Minus {
            component,
            position,
        } => Event::Max {
            component: *component,
            position: *position,
        },
        Move::R3 {
            component,
            position,
            relabel,
            ..
        } => {
            // The relabelled member landed on the other side of the pair.
            let landed = match relabel {
                PairHalf::First => *position + 1,
                PairHalf::Second => *position,
            };
            let new_label = next.component(*component)[landed - 1].label;
            Event::Pass {
                component: *component,
                position: *position,
                over: match relabel {
                    PairHalf::Second => OverStrand::Left,
                    PairHalf::First => OverStrand::Right,
                },
                new_label,
            }
        }
        Move::SvPlus {
            component,
            slot,
            sign,
            label,
            ..
        } => {
            let pre = pre_insert_region(d, *component, *slot, 1, *label)
                .expect("single insertions have no fresh region");
            Event::SvBirth {
                component: *component,
                position: slot + 1,
                dir: Dir::from_sign(*sign),
                label: pre,
            }
        }
        Move::SvMinus {
            component,
            position,
        } => Event::SvDeath {
            component: *component,
            position: *position,
        },
    }
}
