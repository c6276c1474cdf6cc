//! Cut-concordance certificates and their verifier.
//!
//! A concordance between two diagrams on the same skeleton `X` lives on
//! `X × [0,1]`: each cut-point sweeps out an arc of a one-dimensional *cut
//! locus* on the product surface, labelled by a region of the surface
//! complex.  A [`Certificate`] presents such a cobordism as a *movie*: the
//! slice at a given height is a list of transits (points where the cut
//! locus crosses the slice, each with a direction and a label) separated by
//! gaps (slices of surface regions), and a sequence of [`Event`]s describes
//! how the slice changes as the height rises.
//!
//! Regions of the surface complex merge and split over the course of the
//! movie, so gaps carry union-find nodes and labels refer to nodes.  The
//! verifier replays the events, tracking classes, and checks the two local
//! conditions a cut locus must satisfy:
//!
//! * **rule 1** — where two arcs cross ([`Event::Pass`]), the under arc's
//!   label may jump only across a witness arc carrying the over arc's
//!   label, with matching sign;
//! * **rule 2** — where an arc ends ([`Event::VertexBirth`] /
//!   [`Event::VertexDeath`]), its label must equal the region the endpoint
//!   sits in.
//!
//! Both checks are deferred to the end of the movie and evaluated on final
//! classes, since the regions involved may keep merging.  In
//! [`Mode::Reduced`], arcs may also end at *self-virtualization* vertices
//! ([`Event::SvBirth`] / [`Event::SvDeath`]) subject only to rule 2′: the
//! label must lie on the vertex's own component.  Certificates in
//! [`Mode::Strict`] reject every sv event.
//!
//! A transit points *up* exactly when the cut-point it meets at either
//! boundary is positive; directions are preserved along arcs, so the signs
//! of both boundary diagrams are read off the same way.

mod build;
mod state;
mod verify;

pub use build::{build_slice, build_sv_trace, build_trace, BuildError};
pub use verify::{boundaries, verify};

use crate::diagram::{CutDiagram, RegionRef, Sign};
use std::fmt;

/// Which conditions a certificate is checked against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Genuine cut-concordance: rules 1 and 2 only.
    Strict,
    /// Also admits self-virtualization vertices (rule 2′).
    Reduced,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Strict => write!(f, "strict"),
            Mode::Reduced => write!(f, "reduced"),
        }
    }
}

/// Direction of a transit through a slice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dir {
    Up,
    Down,
}

impl Dir {
    pub fn from_sign(s: Sign) -> Dir {
        match s {
            Sign::Plus => Dir::Up,
            Sign::Minus => Dir::Down,
        }
    }

    pub fn sign(self) -> Sign {
        match self {
            Dir::Up => Sign::Plus,
            Dir::Down => Sign::Minus,
        }
    }

    pub fn as_i64(self) -> i64 {
        self.sign().as_i64()
    }

    pub fn opposite(self) -> Dir {
        match self {
            Dir::Up => Dir::Down,
            Dir::Down => Dir::Up,
        }
    }
}

impl fmt::Display for Dir {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dir::Up => write!(f, "up"),
            Dir::Down => write!(f, "down"),
        }
    }
}

/// Which strand of a crossing pair passes over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OverStrand {
    /// The left transit (at `position`) passes over.
    Left,
    /// The right transit (at `position + 1`) passes over.
    Right,
}

/// One step of a movie.
///
/// Positions are 1-based.  For births and minima, `position` is the place
/// the (first) new transit occupies after the event; label references
/// `i.j` are resolved against the gaps of the slice *before* the event.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Event {
    /// Nothing happens at this height.
    Product,
    /// An arc ends going down: the transit disappears and its two
    /// neighbouring gaps merge.  Rule 2 applies.
    VertexDeath { component: usize, position: usize },
    /// An arc ends going up: a transit appears inside a gap, whose two
    /// halves keep its region.  Rule 2 applies.
    VertexBirth {
        component: usize,
        position: usize,
        dir: Dir,
        label: RegionRef,
    },
    /// Like [`Event::VertexDeath`] at a self-virtualization vertex
    /// (rule 2′ instead of rule 2; reduced mode only).
    SvDeath { component: usize, position: usize },
    /// Like [`Event::VertexBirth`] at a self-virtualization vertex.
    SvBirth {
        component: usize,
        position: usize,
        dir: Dir,
        label: RegionRef,
    },
    /// A local minimum of an arc: two transits with opposite directions
    /// and a common label appear; the gap between them is a new region.
    Min {
        component: usize,
        position: usize,
        dirs: (Dir, Dir),
        label: RegionRef,
    },
    /// A local maximum: the transits at `position` and `position + 1`,
    /// with opposite directions and equal label classes, annihilate; the
    /// outer gaps merge and the middle region closes off.
    Max { component: usize, position: usize },
    /// Two arcs cross: the transits swap, the gap between them becomes a
    /// new region, and the under transit's label changes to `new_label`.
    /// Rule 1 applies.
    Pass {
        component: usize,
        position: usize,
        over: OverStrand,
        new_label: RegionRef,
    },
}

impl Event {
    /// Whether this is a self-virtualization event.
    pub fn is_sv(&self) -> bool {
        matches!(self, Event::SvDeath { .. } | Event::SvBirth { .. })
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Event::Product => write!(f, "product"),
            Event::VertexDeath {
                component,
                position,
            } => write!(f, "vdeath {component} {position}"),
            Event::VertexBirth {
                component,
                position,
                dir,
                label,
            } => write!(f, "vbirth {component} {position} {dir} {label}"),
            Event::SvDeath {
                component,
                position,
            } => write!(f, "svdeath {component} {position}"),
            Event::SvBirth {
                component,
                position,
                dir,
                label,
            } => write!(f, "svbirth {component} {position} {dir} {label}"),
            Event::Min {
                component,
                position,
                dirs,
                label,
            } => {
                let pair = match dirs {
                    (Dir::Up, Dir::Down) => "up-down",
                    (Dir::Down, Dir::Up) => "down-up",
                    _ => "invalid",
                };
                write!(f, "min {component} {position} {pair} {label}")
            }
            Event::Max {
                component,
                position,
            } => write!(f, "max {component} {position}"),
            Event::Pass {
                component,
                position,
                over,
                new_label,
            } => {
                let tok = match over {
                    OverStrand::Left => "over",
                    OverStrand::Right => "under",
                };
                write!(f, "pass {component} {position} {tok} {new_label}")
            }
        }
    }
}

/// A movie presenting a cobordism of the cut locus over `X × [0,1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub mode: Mode,
    pub events: Vec<Event>,
}

impl Certificate {
    /// The same certificate checked under a different mode.
    pub fn with_mode(&self, mode: Mode) -> Certificate {
        Certificate {
            mode,
            events: self.events.clone(),
        }
    }
}

/// Outcome of verifying a certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Report {
    /// The movie satisfies all conditions; `final_diagram` is the slice it
    /// ends on (labels resolved to the smallest gap of each class).
    Accepted { final_diagram: CutDiagram },
    /// The movie breaks a condition at the given 1-based event (or at the
    /// end, when `event` is `None`).
    Rejected {
        reason: String,
        event: Option<usize>,
    },
}

impl Report {
    pub fn is_accepted(&self) -> bool {
        matches!(self, Report::Accepted { .. })
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Report::Accepted { final_diagram } => {
                write!(
                    f,
                    "ACCEPTED: bounds a slice with {} cut-points",
                    final_diagram.cut_point_count()
                )
            }
            Report::Rejected { reason, event } => match event {
                Some(i) => write!(f, "REJECTED at event {i}: {reason}"),
                None => write!(f, "REJECTED: {reason}"),
            },
        }
    }
}
