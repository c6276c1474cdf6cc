//! Nilpotent peripheral systems and invariant comparison.
//!
//! The level-`q` peripheral system of a cut-diagram pairs each component
//! with a meridian and a longitude in the free nilpotent quotient
//! `F(R_1, …, R_n) / Γ_q`, computed through the level-`q` reduction of the
//! diagram's group.  Two diagrams with the same numerical invariant tables
//! up to a given length are indistinguishable by these systems; the
//! [`same_invariants`] verdict reports the first table entry where they
//! disagree (taking each entry's indeterminacy into account), if any.
//!
//! The *reduced* peripheral system drops, for each component, every
//! monomial that mentions the component's own meridian from the expanded
//! longitude.  This removes the meridian-multiplication ambiguity and is
//! the part of the data preserved by self-virtualization.

use crate::chen::{chen_longitude, RoadNetwork};
use crate::diagram::CutDiagram;
use crate::magnus::{longitude_series, milnor_table, Disagreement, TruncatedSeries};
use crate::word::Word;
use std::fmt;

/// Meridian–longitude pair of one component at a fixed nilpotency level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeripheralPair {
    pub component: usize,
    /// Image of the meridian: always the component's generator.
    pub meridian: Word<usize>,
    /// Image of the framing-corrected longitude at this level.
    pub longitude: Word<usize>,
}

/// The level-`q` peripheral system of a diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeripheralSystem {
    pub level: usize,
    pub pairs: Vec<PeripheralPair>,
}

/// Computes the level-`q` peripheral system along the canonical road
/// network.
pub fn peripheral_system(d: &CutDiagram, q: usize) -> PeripheralSystem {
    let net = RoadNetwork::canonical(d);
    let pairs = (1..=d.component_count())
        .map(|c| PeripheralPair {
            component: c,
            meridian: Word::generator(c, 1),
            longitude: chen_longitude(d, &net, q, c),
        })
        .collect();
    PeripheralSystem { level: q, pairs }
}

impl fmt::Display for PeripheralSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "peripheral system at level {}", self.level)?;
        for p in &self.pairs {
            writeln!(
                f,
                "  component {}: meridian {}, longitude {}",
                p.component,
                p.meridian.fmt_with("R"),
                p.longitude.fmt_with("R"),
            )?;
        }
        Ok(())
    }
}

/// The reduced peripheral data: each longitude expanded in the reduced
/// algebra with every monomial mentioning its own component removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedPeripheral {
    /// Expansions keep monomials of degree `< maxlen`.
    pub maxlen: usize,
    /// One meridian-deleted longitude expansion per component.
    pub longitudes: Vec<TruncatedSeries>,
}

/// Computes the reduced peripheral data along the canonical road network.
pub fn reduced_peripheral(d: &CutDiagram, maxlen: usize) -> ReducedPeripheral {
    let net = RoadNetwork::canonical(d);
    let longitudes = longitude_series(d, &net, maxlen, true)
        .into_iter()
        .enumerate()
        .map(|(i, s)| s.filter_monomials(|seq| !seq.contains(&(i + 1))))
        .collect();
    ReducedPeripheral { maxlen, longitudes }
}

impl fmt::Display for ReducedPeripheral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "reduced peripheral data below length {}", self.maxlen)?;
        for (i, s) in self.longitudes.iter().enumerate() {
            writeln!(f, "  component {}: {}", i + 1, s)?;
        }
        Ok(())
    }
}

/// Outcome of comparing the invariant tables of two diagrams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// All table entries agree modulo their indeterminacies.
    Equal,
    /// The earliest disagreeing entry.
    Differ(Disagreement),
    /// The diagrams have different numbers of components.
    Incomparable {
        left_components: usize,
        right_components: usize,
    },
}

impl Verdict {
    pub fn is_equal(&self) -> bool {
        matches!(self, Verdict::Equal)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Equal => write!(f, "EQUAL"),
            Verdict::Differ(d) => write!(f, "DIFFER at {d}"),
            Verdict::Incomparable {
                left_components,
                right_components,
            } => write!(
                f,
                "INCOMPARABLE: {left_components} vs {right_components} components"
            ),
        }
    }
}

/// Compares the invariant tables of two diagrams up to multi-index length
/// `maxlen`, entry-wise modulo each entry's indeterminacy.
pub fn same_invariants(
    left: &CutDiagram,
    right: &CutDiagram,
    maxlen: usize,
    reduced: bool,
) -> Verdict {
    if left.component_count() != right.component_count() {
        return Verdict::Incomparable {
            left_components: left.component_count(),
            right_components: right.component_count(),
        };
    }
    let lt = milnor_table(left, maxlen, reduced);
    let rt = milnor_table(right, maxlen, reduced);
    match lt.first_disagreement(&rt) {
        None => Verdict::Equal,
        Some(d) => Verdict::Differ(d),
    }
}
