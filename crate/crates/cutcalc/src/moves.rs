//! Local moves on cut-diagrams.
//!
//! Seven families of local moves generate the equivalence of cut-diagrams:
//!
//! * `r1+` / `r1-` — birth and death of a cut-point labelled by one of its
//!   own two adjacent regions (a kink);
//! * `r2+` / `r2-` — birth and death of a pair of adjacent cut-points with
//!   opposite signs and a common label, whose middle region is labelled
//!   nowhere in the diagram;
//! * `r3` — sliding a pair of adjacent cut-points across a *witness*
//!   cut-point: the pair swaps and the label of one member jumps to the
//!   other side of the witness (signs permitting);
//! * `sv+` / `sv-` — birth and death of a cut-point labelled on its own
//!   component (self-virtualization).  These change the diagram class in
//!   general but preserve the reduced invariants.
//!
//! Every move is checked for validity before it is applied, and every
//! insertion or deletion renumbers regions consistently: inserting at slot
//! `s` splits one region in two (a [`Reassign`] choice says which existing
//! labels follow the second part), and deleting merges the neighbouring
//! regions.  On circles the basepoint region absorbs merges that wrap
//! around it.
//!
//! Moves at a circle's wrap slot carry one extra side condition: no label may
//! cross the basepoint.  An insertion at slot `k` must keep every label of
//! the basepoint region on the basepoint side, a deletion whose range ends
//! at the last cut-point requires the collapsing regions above the basepoint
//! region to be unlabelled, and a slide witness may not be the last
//! cut-point of a circle (its two sides are the regions flanking the
//! basepoint).  Relocating a label across the basepoint would conjugate its
//! meridian by the full traversal of the circle, which shifts exact
//! longitude coefficients; gating these instances keeps every remaining move
//! invariant on the nose (the fuzz suite below checks precisely this).

use crate::diagram::{ComponentKind, CutDiagram, CutPoint, RegionRef, Sign};
use rand::Rng;
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

/// Reference to a cut-point: component and 1-based position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CutRef {
    pub component: usize,
    pub position: usize,
}

impl CutRef {
    pub fn new(component: usize, position: usize) -> Self {
        CutRef {
            component,
            position,
        }
    }
}

impl fmt::Display for CutRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.component, self.position)
    }
}

/// Which of a kink's two adjacent regions carries its label.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Before,
    After,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Before => write!(f, "before"),
            Side::After => write!(f, "after"),
        }
    }
}

/// Which member of an adjacent pair (by pre-move position).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairHalf {
    First,
    Second,
}

impl fmt::Display for PairHalf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairHalf::First => write!(f, "first"),
            PairHalf::Second => write!(f, "second"),
        }
    }
}

/// When an insertion splits a region, which existing labels move to the part
/// *after* the inserted cut-points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reassign {
    /// All labels stay with the part before the insertion.
    First,
    /// All labels move to the part after the insertion.
    Second,
    /// Exactly the listed cut-points' labels move to the second part.
    Custom(BTreeSet<CutRef>),
}

impl Reassign {
    fn sends_to_second(&self, r: CutRef) -> bool {
        match self {
            Reassign::First => false,
            Reassign::Second => true,
            Reassign::Custom(set) => set.contains(&r),
        }
    }
}

impl fmt::Display for Reassign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reassign::First => write!(f, "first"),
            Reassign::Second => write!(f, "second"),
            Reassign::Custom(set) => {
                let parts: Vec<String> = set.iter().map(|r| r.to_string()).collect();
                write!(f, "{{{}}}", parts.join(","))
            }
        }
    }
}

/// A fully parametrized move instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Move {
    R1Plus {
        component: usize,
        /// Insert after cut-point `slot` (0 = before the first).
        slot: usize,
        sign: Sign,
        side: Side,
        reassign: Reassign,
    },
    R1Minus {
        component: usize,
        position: usize,
    },
    R2Plus {
        component: usize,
        slot: usize,
        first_sign: Sign,
        /// Common label of the pair, in post-move region indices.
        label: RegionRef,
        reassign: Reassign,
    },
    R2Minus {
        component: usize,
        /// First member of the pair `(position, position + 1)`.
        position: usize,
    },
    R3 {
        component: usize,
        /// First member of the pair `(position, position + 1)`.
        position: usize,
        /// Which member's label jumps across the witness.
        relabel: PairHalf,
        witness: CutRef,
    },
    SvPlus {
        component: usize,
        slot: usize,
        sign: Sign,
        /// Label on the same component, in post-move region indices.
        label: RegionRef,
        reassign: Reassign,
    },
    SvMinus {
        component: usize,
        position: usize,
    },
}

/// The move families, for filtering.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MoveKind {
    R1Plus,
    R1Minus,
    R2Plus,
    R2Minus,
    R3,
    SvPlus,
    SvMinus,
}

/// All seven move families.
pub const ALL_KINDS: [MoveKind; 7] = [
    MoveKind::R1Plus,
    MoveKind::R1Minus,
    MoveKind::R2Plus,
    MoveKind::R2Minus,
    MoveKind::R3,
    MoveKind::SvPlus,
    MoveKind::SvMinus,
];

/// The diagram-class-preserving families (no self-virtualization).
pub const CLASSICAL_KINDS: [MoveKind; 5] = [
    MoveKind::R1Plus,
    MoveKind::R1Minus,
    MoveKind::R2Plus,
    MoveKind::R2Minus,
    MoveKind::R3,
];

/// The self-virtualization families.
pub const SV_KINDS: [MoveKind; 2] = [MoveKind::SvPlus, MoveKind::SvMinus];

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MoveKind::R1Plus => "r1+",
            MoveKind::R1Minus => "r1-",
            MoveKind::R2Plus => "r2+",
            MoveKind::R2Minus => "r2-",
            MoveKind::R3 => "r3",
            MoveKind::SvPlus => "sv+",
            MoveKind::SvMinus => "sv-",
        };
        write!(f, "{s}")
    }
}

impl Move {
    pub fn kind(&self) -> MoveKind {
        match self {
            Move::R1Plus { .. } => MoveKind::R1Plus,
            Move::R1Minus { .. } => MoveKind::R1Minus,
            Move::R2Plus { .. } => MoveKind::R2Plus,
            Move::R2Minus { .. } => MoveKind::R2Minus,
            Move::R3 { .. } => MoveKind::R3,
            Move::SvPlus { .. } => MoveKind::SvPlus,
            Move::SvMinus { .. } => MoveKind::SvMinus,
        }
    }

    pub fn component(&self) -> usize {
        match self {
            Move::R1Plus { component, .. }
            | Move::R1Minus { component, .. }
            | Move::R2Plus { component, .. }
            | Move::R2Minus { component, .. }
            | Move::R3 { component, .. }
            | Move::SvPlus { component, .. }
            | Move::SvMinus { component, .. } => *component,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MoveError {
    #[error("component {0} does not exist")]
    NoSuchComponent(usize),
    #[error("slot {slot} out of range 0..={max} on component {component}")]
    SlotOutOfRange {
        component: usize,
        slot: usize,
        max: usize,
    },
    #[error("no cut-point at position {position} of component {component}")]
    NoSuchCutPoint { component: usize, position: usize },
    #[error("pair at positions {0}..{1} would wrap around the component")]
    PairWrapsAround(usize, usize),
    #[error("cut-point is not a kink (label must be an adjacent region)")]
    NotAKink,
    #[error("pair signs must be opposite and labels equal")]
    NotACancellingPair,
    #[error("the middle region of the pair is labelled elsewhere")]
    MiddleRegionLabeled,
    #[error("label {0} does not exist (post-move indexing)")]
    LabelOutOfRange(RegionRef),
    #[error("label must lie on the same component")]
    NotSelfLabeled,
    #[error("witness {0} does not fit the pair (label or sign mismatch)")]
    WitnessMismatch(CutRef),
    #[error("reassignment references {0}, which is not labelled by the split region")]
    BadReassign(CutRef),
    #[error("label of {0} must stay with the basepoint region at a wrap insertion")]
    WrapReassign(CutRef),
    #[error("region {0} is labelled elsewhere; deleting up to the last cut-point would drag the label across the basepoint")]
    WrapMergeLabeled(RegionRef),
    #[error(
        "witness {0} is the last cut-point of a circle; the label jump would cross the basepoint"
    )]
    WrapWitness(CutRef),
}

// ---------------------------------------------------------------------------
// Region renumbering.
// ---------------------------------------------------------------------------

/// New indices of the parts of the region split by inserting `inserted`
/// cut-points at `slot`: `(split_region, first_part, middle, second_part)`.
pub(crate) fn split_parts(
    kind: ComponentKind,
    k: usize,
    slot: usize,
    inserted: usize,
) -> (usize, usize, usize, usize) {
    match kind {
        ComponentKind::Interval => (slot, slot, slot + 1, slot + inserted),
        ComponentKind::Circle if k == 0 => (0, 0, 1, 0),
        ComponentKind::Circle if slot == k => (0, k, k + 1, 0),
        ComponentKind::Circle => (slot, slot, slot + 1, slot + inserted),
    }
}

/// New index of old region `t` of the modified component after inserting
/// `inserted` cut-points at `slot`; `to_second` says where a label of the
/// split region itself goes.
fn remap_after_insert(
    kind: ComponentKind,
    k: usize,
    slot: usize,
    inserted: usize,
    t: usize,
    to_second: bool,
) -> usize {
    let (sigma, first, _, second) = split_parts(kind, k, slot, inserted);
    if t == sigma {
        return if to_second { second } else { first };
    }
    match kind {
        ComponentKind::Circle if k == 0 => 0,
        ComponentKind::Circle if slot == k => t,
        _ => {
            if t < slot {
                t
            } else {
                t + inserted
            }
        }
    }
}

/// New index of old region `t` of the modified component after deleting
/// `removed` consecutive cut-points starting at `pos` (the regions adjacent
/// to the deleted points merge).
fn remap_after_delete(
    kind: ComponentKind,
    k: usize,
    pos: usize,
    removed: usize,
    t: usize,
) -> usize {
    let hi = pos - 1 + removed;
    match kind {
        ComponentKind::Circle if hi == k => {
            // The merged block wraps into the basepoint region.
            if t >= pos - 1 {
                0
            } else {
                t
            }
        }
        _ => {
            if t < pos {
                t
            } else if t <= hi {
                pos - 1
            } else {
                t - removed
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Applying moves.
// ---------------------------------------------------------------------------

fn check_component(d: &CutDiagram, c: usize) -> Result<(), MoveError> {
    if c >= 1 && c <= d.component_count() {
        Ok(())
    } else {
        Err(MoveError::NoSuchComponent(c))
    }
}

fn check_position(d: &CutDiagram, c: usize, pos: usize) -> Result<(), MoveError> {
    if pos >= 1 && pos <= d.component(c).len() {
        Ok(())
    } else {
        Err(MoveError::NoSuchCutPoint {
            component: c,
            position: pos,
        })
    }
}

/// Region count of component `c` after inserting `extra` cut-points.
fn region_count_after(d: &CutDiagram, c: usize, extra: usize) -> usize {
    let k = d.component(c).len() + extra;
    match d.skeleton.kind(c) {
        ComponentKind::Interval => k + 1,
        ComponentKind::Circle => k.max(1),
    }
}

/// Validates a label in post-insertion indexing.
fn check_post_label(
    d: &CutDiagram,
    c: usize,
    extra: usize,
    label: RegionRef,
) -> Result<(), MoveError> {
    if label.component < 1 || label.component > d.component_count() {
        return Err(MoveError::LabelOutOfRange(label));
    }
    let count = if label.component == c {
        region_count_after(d, c, extra)
    } else {
        d.region_count(label.component)
    };
    if label.region >= count {
        return Err(MoveError::LabelOutOfRange(label));
    }
    Ok(())
}

/// Renumbers all labels pointing at component `c` for an insertion, honouring
/// the reassignment of the split region, and returns the new diagram with
/// `new_points` placed at positions `slot+1 ..`.
fn insert_points(
    d: &CutDiagram,
    c: usize,
    slot: usize,
    new_points: Vec<CutPoint>,
    reassign: &Reassign,
) -> Result<CutDiagram, MoveError> {
    let kind = d.skeleton.kind(c);
    let k = d.component(c).len();
    if slot > k {
        return Err(MoveError::SlotOutOfRange {
            component: c,
            slot,
            max: k,
        });
    }
    let inserted = new_points.len();
    let (sigma, _, _, _) = split_parts(kind, k, slot, inserted);
    if let Reassign::Custom(set) = reassign {
        for r in set {
            let exists = r.component >= 1
                && r.component <= d.component_count()
                && r.position >= 1
                && r.position <= d.component(r.component).len();
            if !exists || d.component(r.component)[r.position - 1].label != RegionRef::new(c, sigma)
            {
                return Err(MoveError::BadReassign(*r));
            }
        }
    }
    // At the wrap slot the first part lies on the far side of the basepoint:
    // every label of the basepoint region must follow the second part.
    if kind == ComponentKind::Circle && k > 0 && slot == k {
        for (ci, pts) in d.cut_points.iter().enumerate() {
            for (pi, p) in pts.iter().enumerate() {
                let r = CutRef::new(ci + 1, pi + 1);
                if p.label == RegionRef::new(c, sigma) && !reassign.sends_to_second(r) {
                    return Err(MoveError::WrapReassign(r));
                }
            }
        }
    }
    let mut out = d.clone();
    for (ci, pts) in out.cut_points.iter_mut().enumerate() {
        for (pi, p) in pts.iter_mut().enumerate() {
            if p.label.component == c {
                let to_second = reassign.sends_to_second(CutRef::new(ci + 1, pi + 1));
                p.label.region =
                    remap_after_insert(kind, k, slot, inserted, p.label.region, to_second);
            }
        }
    }
    for (i, p) in new_points.into_iter().enumerate() {
        out.cut_points[c - 1].insert(slot + i, p);
    }
    debug_assert!(out.validate().ok(), "insertion produced an invalid diagram");
    Ok(out)
}

/// Removes `removed` consecutive cut-points starting at `pos` and merges the
/// adjacent regions.
fn delete_points(d: &CutDiagram, c: usize, pos: usize, removed: usize) -> CutDiagram {
    let kind = d.skeleton.kind(c);
    let k = d.component(c).len();
    let mut out = d.clone();
    out.cut_points[c - 1].drain(pos - 1..pos - 1 + removed);
    for pts in out.cut_points.iter_mut() {
        for p in pts.iter_mut() {
            if p.label.component == c {
                p.label.region = remap_after_delete(kind, k, pos, removed, p.label.region);
            }
        }
    }
    debug_assert!(out.validate().ok(), "deletion produced an invalid diagram");
    out
}

/// Whether any cut-point of `d` is labelled by `region`.
fn region_is_labeled(d: &CutDiagram, region: RegionRef) -> bool {
    d.cut_points
        .iter()
        .any(|pts| pts.iter().any(|p| p.label == region))
}

/// A deletion on a circle whose range ends at the last cut-point merges the
/// top regions into the basepoint region.  Any surviving label on one of the
/// collapsing regions (other than the basepoint region itself) would cross
/// the basepoint, so such instances are rejected.
fn check_wrap_delete(
    d: &CutDiagram,
    c: usize,
    pos: usize,
    removed: usize,
) -> Result<(), MoveError> {
    let k = d.component(c).len();
    if d.skeleton.kind(c) != ComponentKind::Circle || pos - 1 + removed != k {
        return Ok(());
    }
    for t in (pos - 1).max(1)..k {
        let region = RegionRef::new(c, t);
        for (ci, pts) in d.cut_points.iter().enumerate() {
            for (pi, p) in pts.iter().enumerate() {
                let deleted = ci + 1 == c && pi + 1 >= pos && pi + 1 < pos + removed;
                if !deleted && p.label == region {
                    return Err(MoveError::WrapMergeLabeled(region));
                }
            }
        }
    }
    Ok(())
}

/// Applies a move, validating it first.
pub fn apply_move(d: &CutDiagram, m: &Move) -> Result<CutDiagram, MoveError> {
    match m {
        Move::R1Plus {
            component,
            slot,
            sign,
            side,
            reassign,
        } => {
            let c = *component;
            check_component(d, c)?;
            let k = d.component(c).len();
            if *slot > k {
                return Err(MoveError::SlotOutOfRange {
                    component: c,
                    slot: *slot,
                    max: k,
                });
            }
            let (_, first, _, second) = split_parts(d.skeleton.kind(c), k, *slot, 1);
            let own = match side {
                Side::Before => first,
                Side::After => second,
            };
            let p = CutPoint::new(*sign, RegionRef::new(c, own));
            insert_points(d, c, *slot, vec![p], reassign)
        }
        Move::R1Minus {
            component,
            position,
        } => {
            let (c, pos) = (*component, *position);
            check_component(d, c)?;
            check_position(d, c, pos)?;
            let p = d.component(c)[pos - 1];
            if p.label != d.region_before(c, pos) && p.label != d.region_after(c, pos) {
                return Err(MoveError::NotAKink);
            }
            check_wrap_delete(d, c, pos, 1)?;
            Ok(delete_points(d, c, pos, 1))
        }
        Move::R2Plus {
            component,
            slot,
            first_sign,
            label,
            reassign,
        } => {
            let c = *component;
            check_component(d, c)?;
            let k = d.component(c).len();
            if *slot > k {
                return Err(MoveError::SlotOutOfRange {
                    component: c,
                    slot: *slot,
                    max: k,
                });
            }
            check_post_label(d, c, 2, *label)?;
            let (_, _, middle, _) = split_parts(d.skeleton.kind(c), k, *slot, 2);
            if *label == RegionRef::new(c, middle) {
                return Err(MoveError::MiddleRegionLabeled);
            }
            let pts = vec![
                CutPoint::new(*first_sign, *label),
                CutPoint::new(first_sign.opposite(), *label),
            ];
            insert_points(d, c, *slot, pts, reassign)
        }
        Move::R2Minus {
            component,
            position,
        } => {
            let (c, pos) = (*component, *position);
            check_component(d, c)?;
            check_position(d, c, pos)?;
            if pos + 1 > d.component(c).len() {
                return Err(MoveError::PairWrapsAround(pos, pos + 1));
            }
            let x = d.component(c)[pos - 1];
            let y = d.component(c)[pos];
            if x.sign != y.sign.opposite() || x.label != y.label {
                return Err(MoveError::NotACancellingPair);
            }
            let middle = d.region_after(c, pos);
            if region_is_labeled(d, middle) {
                return Err(MoveError::MiddleRegionLabeled);
            }
            check_wrap_delete(d, c, pos, 2)?;
            Ok(delete_points(d, c, pos, 2))
        }
        Move::R3 {
            component,
            position,
            relabel,
            witness,
        } => {
            let (c, pos) = (*component, *position);
            check_component(d, c)?;
            check_position(d, c, pos)?;
            if pos + 1 > d.component(c).len() {
                return Err(MoveError::PairWrapsAround(pos, pos + 1));
            }
            check_component(d, witness.component)?;
            check_position(d, witness.component, witness.position)?;
            if witness.component == c && (witness.position == pos || witness.position == pos + 1) {
                return Err(MoveError::WitnessMismatch(*witness));
            }
            // A witness at the last cut-point of a circle separates the
            // basepoint region from the top region, so the label jump would
            // cross the basepoint (see the module notes on wrap moves).
            let wk = d.component(witness.component).len();
            if d.skeleton.kind(witness.component) == ComponentKind::Circle && witness.position == wk
            {
                return Err(MoveError::WrapWitness(*witness));
            }
            let middle = d.region_after(c, pos);
            if region_is_labeled(d, middle) {
                return Err(MoveError::MiddleRegionLabeled);
            }
            let (target_pos, anchor_pos) = match relabel {
                PairHalf::First => (pos, pos + 1),
                PairHalf::Second => (pos + 1, pos),
            };
            let anchor = d.component(c)[anchor_pos - 1];
            let target = d.component(c)[target_pos - 1];
            let z = d.component(witness.component)[witness.position - 1];
            if z.label != anchor.label {
                return Err(MoveError::WitnessMismatch(*witness));
            }
            let z_in = d.region_before(witness.component, witness.position);
            let z_out = d.region_after(witness.component, witness.position);
            // Sign compatibility: the anchored label conjugates the target's
            // label across the witness exactly when the witness sign matches
            // the anchor sign on the appropriate side.
            let (need_in, need_out) = match relabel {
                PairHalf::First => (anchor.sign, anchor.sign.opposite()),
                PairHalf::Second => (anchor.sign.opposite(), anchor.sign),
            };
            let new_label = if target.label == z_in && z.sign == need_in {
                z_out
            } else if target.label == z_out && z.sign == need_out {
                z_in
            } else {
                return Err(MoveError::WitnessMismatch(*witness));
            };
            let mut out = d.clone();
            out.cut_points[c - 1][target_pos - 1].label = new_label;
            out.cut_points[c - 1].swap(pos - 1, pos);
            debug_assert!(out.validate().ok(), "r3 produced an invalid diagram");
            Ok(out)
        }
        Move::SvPlus {
            component,
            slot,
            sign,
            label,
            reassign,
        } => {
            let c = *component;
            check_component(d, c)?;
            if label.component != c {
                return Err(MoveError::NotSelfLabeled);
            }
            let k = d.component(c).len();
            if *slot > k {
                return Err(MoveError::SlotOutOfRange {
                    component: c,
                    slot: *slot,
                    max: k,
                });
            }
            check_post_label(d, c, 1, *label)?;
            let p = CutPoint::new(*sign, *label);
            insert_points(d, c, *slot, vec![p], reassign)
        }
        Move::SvMinus {
            component,
            position,
        } => {
            let (c, pos) = (*component, *position);
            check_component(d, c)?;
            check_position(d, c, pos)?;
            if d.component(c)[pos - 1].label.component != c {
                return Err(MoveError::NotSelfLabeled);
            }
            check_wrap_delete(d, c, pos, 1)?;
            Ok(delete_points(d, c, pos, 1))
        }
    }
}

// ---------------------------------------------------------------------------
// Enumeration and random walks.
// ---------------------------------------------------------------------------

/// All valid instances of the given move families, in a deterministic order.
///
/// Insertions are enumerated with the `First` reassignment, plus `Second`
/// when the split region actually carries labels (only `Second` at a wrap
/// slot); pair labels range over all post-move regions.  Intended for small
/// diagrams (demos, tests).
pub fn enumerate_moves(d: &CutDiagram, kinds: &[MoveKind]) -> Vec<Move> {
    let n = d.component_count();
    let mut candidates = Vec::new();
    let signs = [Sign::Plus, Sign::Minus];
    for kind in kinds {
        match kind {
            MoveKind::R1Plus => {
                for c in 1..=n {
                    for slot in 0..=d.component(c).len() {
                        for sign in signs {
                            for side in [Side::Before, Side::After] {
                                for re in reassign_options(d, c, slot, 1) {
                                    candidates.push(Move::R1Plus {
                                        component: c,
                                        slot,
                                        sign,
                                        side,
                                        reassign: re,
                                    });
                                }
                            }
                        }
                    }
                }
            }
            MoveKind::R1Minus => {
                for c in 1..=n {
                    for pos in 1..=d.component(c).len() {
                        candidates.push(Move::R1Minus {
                            component: c,
                            position: pos,
                        });
                    }
                }
            }
            MoveKind::R2Plus => {
                for c in 1..=n {
                    for slot in 0..=d.component(c).len() {
                        for sign in signs {
                            for label in post_move_labels(d, c, 2) {
                                for re in reassign_options(d, c, slot, 2) {
                                    candidates.push(Move::R2Plus {
                                        component: c,
                                        slot,
                                        first_sign: sign,
                                        label,
                                        reassign: re,
                                    });
                                }
                            }
                        }
                    }
                }
            }
            MoveKind::R2Minus => {
                for c in 1..=n {
                    for pos in 1..d.component(c).len() {
                        candidates.push(Move::R2Minus {
                            component: c,
                            position: pos,
                        });
                    }
                }
            }
            MoveKind::R3 => {
                for c in 1..=n {
                    for pos in 1..d.component(c).len() {
                        for relabel in [PairHalf::First, PairHalf::Second] {
                            for wc in 1..=n {
                                for wp in 1..=d.component(wc).len() {
                                    candidates.push(Move::R3 {
                                        component: c,
                                        position: pos,
                                        relabel,
                                        witness: CutRef::new(wc, wp),
                                    });
                                }
                            }
                        }
                    }
                }
            }
            MoveKind::SvPlus => {
                for c in 1..=n {
                    for slot in 0..=d.component(c).len() {
                        for sign in signs {
                            for label in post_move_labels(d, c, 1) {
                                if label.component != c {
                                    continue;
                                }
                                for re in reassign_options(d, c, slot, 1) {
                                    candidates.push(Move::SvPlus {
                                        component: c,
                                        slot,
                                        sign,
                                        label,
                                        reassign: re,
                                    });
                                }
                            }
                        }
                    }
                }
            }
            MoveKind::SvMinus => {
                for c in 1..=n {
                    for pos in 1..=d.component(c).len() {
                        candidates.push(Move::SvMinus {
                            component: c,
                            position: pos,
                        });
                    }
                }
            }
        }
    }
    candidates
        .into_iter()
        .filter(|m| apply_move(d, m).is_ok())
        .collect()
}

fn reassign_options(d: &CutDiagram, c: usize, slot: usize, inserted: usize) -> Vec<Reassign> {
    let kind = d.skeleton.kind(c);
    let k = d.component(c).len();
    let (sigma, _, _, _) = split_parts(kind, k, slot, inserted);
    if !region_is_labeled(d, RegionRef::new(c, sigma)) {
        vec![Reassign::First]
    } else if kind == ComponentKind::Circle && k > 0 && slot == k {
        // Wrap slot: the basepoint region's labels may not cross over.
        vec![Reassign::Second]
    } else {
        vec![Reassign::First, Reassign::Second]
    }
}

fn post_move_labels(d: &CutDiagram, c: usize, extra: usize) -> Vec<RegionRef> {
    let mut out = Vec::new();
    for cc in 1..=d.component_count() {
        let count = if cc == c {
            region_count_after(d, c, extra)
        } else {
            d.region_count(cc)
        };
        for j in 0..count {
            out.push(RegionRef::new(cc, j));
        }
    }
    out
}

/// Samples one random valid move of one of the given families, together with
/// the diagram it produces.  Returns `None` when no attempt succeeds.
pub fn random_move<R: Rng>(
    d: &CutDiagram,
    rng: &mut R,
    kinds: &[MoveKind],
) -> Option<(Move, CutDiagram)> {
    if kinds.is_empty() || d.component_count() == 0 {
        return None;
    }
    for _ in 0..500 {
        let kind = kinds[rng.gen_range(0..kinds.len())];
        let Some(m) = sample_instance(d, rng, kind) else {
            continue;
        };
        if let Ok(next) = apply_move(d, &m) {
            return Some((m, next));
        }
    }
    None
}

fn random_sign<R: Rng>(rng: &mut R) -> Sign {
    if rng.gen_bool(0.5) {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

fn random_cut_ref<R: Rng>(d: &CutDiagram, rng: &mut R) -> Option<CutRef> {
    let total = d.cut_point_count();
    if total == 0 {
        return None;
    }
    let mut idx = rng.gen_range(0..total);
    for c in 1..=d.component_count() {
        let k = d.component(c).len();
        if idx < k {
            return Some(CutRef::new(c, idx + 1));
        }
        idx -= k;
    }
    unreachable!()
}

fn sample_instance<R: Rng>(d: &CutDiagram, rng: &mut R, kind: MoveKind) -> Option<Move> {
    let n = d.component_count();
    let c = rng.gen_range(1..=n);
    let k = d.component(c).len();
    let reassign = if rng.gen_bool(0.5) {
        Reassign::First
    } else {
        Reassign::Second
    };
    match kind {
        MoveKind::R1Plus => Some(Move::R1Plus {
            component: c,
            slot: rng.gen_range(0..=k),
            sign: random_sign(rng),
            side: if rng.gen_bool(0.5) {
                Side::Before
            } else {
                Side::After
            },
            reassign,
        }),
        MoveKind::R1Minus => {
            let r = random_cut_ref(d, rng)?;
            Some(Move::R1Minus {
                component: r.component,
                position: r.position,
            })
        }
        MoveKind::R2Plus => {
            let lc = rng.gen_range(1..=n);
            let count = if lc == c {
                region_count_after(d, c, 2)
            } else {
                d.region_count(lc)
            };
            Some(Move::R2Plus {
                component: c,
                slot: rng.gen_range(0..=k),
                first_sign: random_sign(rng),
                label: RegionRef::new(lc, rng.gen_range(0..count)),
                reassign,
            })
        }
        MoveKind::R2Minus => {
            if k < 2 {
                return None;
            }
            Some(Move::R2Minus {
                component: c,
                position: rng.gen_range(1..k),
            })
        }
        MoveKind::R3 => {
            if k < 2 {
                return None;
            }
            Some(Move::R3 {
                component: c,
                position: rng.gen_range(1..k),
                relabel: if rng.gen_bool(0.5) {
                    PairHalf::First
                } else {
                    PairHalf::Second
                },
                witness: random_cut_ref(d, rng)?,
            })
        }
        MoveKind::SvPlus => {
            let count = region_count_after(d, c, 1);
            Some(Move::SvPlus {
                component: c,
                slot: rng.gen_range(0..=k),
                sign: random_sign(rng),
                label: RegionRef::new(c, rng.gen_range(0..count)),
                reassign,
            })
        }
        MoveKind::SvMinus => {
            let r = random_cut_ref(d, rng)?;
            Some(Move::SvMinus {
                component: r.component,
                position: r.position,
            })
        }
    }
}

/// Performs a seeded random walk of up to `steps` valid moves and returns
/// the final diagram with the moves taken.
pub fn random_walk<R: Rng>(
    d: &CutDiagram,
    rng: &mut R,
    steps: usize,
    kinds: &[MoveKind],
) -> (CutDiagram, Vec<Move>) {
    let mut cur = d.clone();
    let mut taken = Vec::new();
    for _ in 0..steps {
        match random_move(&cur, rng, kinds) {
            Some((m, next)) => {
                taken.push(m);
                cur = next;
            }
            None => break,
        }
    }
    (cur, taken)
}

/// Random walk restricted to self-virtualization moves.
pub fn random_sv_walk<R: Rng>(
    d: &CutDiagram,
    rng: &mut R,
    steps: usize,
) -> (CutDiagram, Vec<Move>) {
    random_walk(d, rng, steps, &SV_KINDS)
}

/// Generates a random valid cut-diagram with up to `max_components`
/// components (mostly circles) and up to `max_cut_points` cut-points.
pub fn random_diagram<R: Rng>(
    rng: &mut R,
    max_components: usize,
    max_cut_points: usize,
) -> CutDiagram {
    use crate::diagram::Skeleton;
    let n = rng.gen_range(1..=max_components.max(1));
    let kinds: Vec<ComponentKind> = (0..n)
        .map(|_| {
            if rng.gen_bool(0.8) {
                ComponentKind::Circle
            } else {
                ComponentKind::Interval
            }
        })
        .collect();
    let mut counts = vec![0usize; n];
    for _ in 0..rng.gen_range(0..=max_cut_points) {
        counts[rng.gen_range(0..n)] += 1;
    }
    let skeleton = Skeleton::new(kinds);
    let region_counts: Vec<usize> = (1..=n)
        .map(|c| match skeleton.kind(c) {
            ComponentKind::Interval => counts[c - 1] + 1,
            ComponentKind::Circle => counts[c - 1].max(1),
        })
        .collect();
    let cut_points = (0..n)
        .map(|ci| {
            (0..counts[ci])
                .map(|_| {
                    let lc = rng.gen_range(1..=n);
                    let region = rng.gen_range(0..region_counts[lc - 1]);
                    CutPoint::new(random_sign(rng), RegionRef::new(lc, region))
                })
                .collect()
        })
        .collect();
    CutDiagram::new(skeleton, cut_points)
}

// ---------------------------------------------------------------------------
// Textual form: kind@component:arg:...
// ---------------------------------------------------------------------------

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::R1Plus {
                component,
                slot,
                sign,
                side,
                reassign,
            } => {
                write!(f, "r1+@{component}:{slot}:{sign}:{side}")?;
                fmt_reassign(f, reassign)
            }
            Move::R1Minus {
                component,
                position,
            } => write!(f, "r1-@{component}:{position}"),
            Move::R2Plus {
                component,
                slot,
                first_sign,
                label,
                reassign,
            } => {
                write!(f, "r2+@{component}:{slot}:{first_sign}:{label}")?;
                fmt_reassign(f, reassign)
            }
            Move::R2Minus {
                component,
                position,
            } => write!(f, "r2-@{component}:{position}"),
            Move::R3 {
                component,
                position,
                relabel,
                witness,
            } => write!(f, "r3@{component}:{position}:{relabel}:{witness}"),
            Move::SvPlus {
                component,
                slot,
                sign,
                label,
                reassign,
            } => {
                write!(f, "sv+@{component}:{slot}:{sign}:{label}")?;
                fmt_reassign(f, reassign)
            }
            Move::SvMinus {
                component,
                position,
            } => write!(f, "sv-@{component}:{position}"),
        }
    }
}

fn fmt_reassign(f: &mut fmt::Formatter<'_>, r: &Reassign) -> fmt::Result {
    match r {
        Reassign::First => Ok(()),
        _ => write!(f, ":{r}"),
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("cannot parse move {0:?}: {1}")]
pub struct MoveParseError(pub String, pub &'static str);

fn parse_sign(s: &str) -> Option<Sign> {
    match s {
        "+" => Some(Sign::Plus),
        "-" => Some(Sign::Minus),
        _ => None,
    }
}

fn parse_dotted(s: &str) -> Option<(usize, usize)> {
    let (a, b) = s.split_once('.')?;
    Some((a.parse().ok()?, b.parse().ok()?))
}

fn parse_reassign(s: &str) -> Option<Reassign> {
    match s {
        "first" => Some(Reassign::First),
        "second" => Some(Reassign::Second),
        _ => {
            let inner = s.strip_prefix('{')?.strip_suffix('}')?;
            let mut set = BTreeSet::new();
            for part in inner.split(',').filter(|p| !p.is_empty()) {
                let (c, p) = parse_dotted(part)?;
                set.insert(CutRef::new(c, p));
            }
            Some(Reassign::Custom(set))
        }
    }
}

/// Parses the textual form of a move, e.g. `r2+@1:0:+:2.1:second`,
/// `r1-@2:3`, or `r3@2:2:second:1.1`.
pub fn parse_move(s: &str) -> Result<Move, MoveParseError> {
    let err = |msg: &'static str| MoveParseError(s.to_string(), msg);
    let (kind, rest) = s.split_once('@').ok_or_else(|| err("missing '@'"))?;
    let parts: Vec<&str> = rest.split(':').collect();
    let int = |i: usize| -> Result<usize, MoveParseError> {
        parts
            .get(i)
            .and_then(|p| p.parse().ok())
            .ok_or_else(|| err("bad integer field"))
    };
    let reassign = |i: usize| -> Result<Reassign, MoveParseError> {
        match parts.get(i) {
            None => Ok(Reassign::First),
            Some(p) => parse_reassign(p).ok_or_else(|| err("bad reassignment")),
        }
    };
    match kind {
        "r1+" => {
            if parts.len() < 4 || parts.len() > 5 {
                return Err(err("expected component:slot:sign:side[:reassign]"));
            }
            Ok(Move::R1Plus {
                component: int(0)?,
                slot: int(1)?,
                sign: parse_sign(parts[2]).ok_or_else(|| err("bad sign"))?,
                side: match parts[3] {
                    "before" => Side::Before,
                    "after" => Side::After,
                    _ => return Err(err("bad side")),
                },
                reassign: reassign(4)?,
            })
        }
        "r1-" | "r2-" | "sv-" => {
            if parts.len() != 2 {
                return Err(err("expected component:position"));
            }
            let (component, position) = (int(0)?, int(1)?);
            Ok(match kind {
                "r1-" => Move::R1Minus {
                    component,
                    position,
                },
                "r2-" => Move::R2Minus {
                    component,
                    position,
                },
                _ => Move::SvMinus {
                    component,
                    position,
                },
            })
        }
        "r2+" | "sv+" => {
            if parts.len() < 4 || parts.len() > 5 {
                return Err(err("expected component:slot:sign:label[:reassign]"));
            }
            let (lc, lr) = parse_dotted(parts[3]).ok_or_else(|| err("bad label"))?;
            let label = RegionRef::new(lc, lr);
            let sign = parse_sign(parts[2]).ok_or_else(|| err("bad sign"))?;
            Ok(if kind == "r2+" {
                Move::R2Plus {
                    component: int(0)?,
                    slot: int(1)?,
                    first_sign: sign,
                    label,
                    reassign: reassign(4)?,
                }
            } else {
                Move::SvPlus {
                    component: int(0)?,
                    slot: int(1)?,
                    sign,
                    label,
                    reassign: reassign(4)?,
                }
            })
        }
        "r3" => {
            if parts.len() != 4 {
                return Err(err("expected component:position:half:witness"));
            }
            let (wc, wp) = parse_dotted(parts[3]).ok_or_else(|| err("bad witness"))?;
            Ok(Move::R3 {
                component: int(0)?,
                position: int(1)?,
                relabel: match parts[2] {
                    "first" => PairHalf::First,
                    "second" => PairHalf::Second,
                    _ => return Err(err("bad half")),
                },
                witness: CutRef::new(wc, wp),
            })
        }
        _ => Err(err("unknown move kind")),
    }
}
