//! A combinatorial calculus for 1-dimensional cut-diagrams.
//!
//! A cut-diagram is a compact oriented 1-manifold together with a finite set
//! of signed *cut-points*, each labeled by a region (a connected component of
//! the complement of the cut-points).  Cut-diagrams are a diagrammatic
//! incarnation of welded links and string links: every Gauss code gives one,
//! and the local moves of module [`moves`] generate the welded equivalence.
//!
//! The crate provides, on top of the basic data model:
//!
//! * conversion from Gauss codes ([`gauss`]) and a plain-text file format
//!   ([`io`]) for diagrams (`.cut`) and concordance certificates (`.cmov`);
//! * the group of a diagram, path words and longitudes ([`group`]);
//! * Chen-style nilpotent reductions along road networks ([`chen`]);
//! * truncated Magnus expansions, Milnor-type invariant tables with their
//!   indeterminacies, and the repeated-index-killing reduced variants
//!   ([`magnus`], [`peripheral`]);
//! * the local move engine with deterministic enumeration and seeded random
//!   walks ([`moves`]);
//! * a verifier and builders for concordance certificates over the product
//!   of the underlying 1-manifold with an interval ([`concordance`]).
//!
//! The `cutcalc` binary is a thin command-line front end; the `examples/`
//! directory contains one runnable example per major capability.

pub mod chen;
pub mod concordance;
pub mod diagram;
pub mod gauss;
pub mod group;
pub mod io;
pub mod magnus;
pub mod moves;
pub mod peripheral;
pub mod union_find;
pub mod word;

pub use diagram::{ComponentKind, CutDiagram, CutPoint, RegionRef, Sign, Skeleton};
pub use word::Word;
