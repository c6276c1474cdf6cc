//! Core data model: skeletons, regions, cut-points and cut-diagrams.
//!
//! A *cut-diagram* consists of an ordered family of oriented components
//! (circles or intervals) carrying signed cut-points; every cut-point is
//! labeled by a *region*, i.e. a connected component of the complement of
//! the cut-points in the underlying 1-manifold.
//!
//! Numbering conventions, used consistently across the crate and in the
//! serialized formats:
//!
//! * components are 1-based;
//! * cut-points on a component are 1-based, in orientation order (for a
//!   circle, starting from its basepoint);
//! * regions are 0-based.  On an interval with `k` cut-points the regions
//!   are `r_0, …, r_k`, where `r_0` precedes the first cut-point and `r_j`
//!   follows the `j`-th.  On a circle with `k ≥ 1` cut-points they are
//!   `r_0, …, r_{k-1}`, where `r_0` contains the basepoint (immediately
//!   preceding the first cut-point and following the last) and `r_j`
//!   follows the `j`-th cut-point.  A circle without cut-points has the
//!   single region `r_0`.

use std::fmt;

/// Orientation class of a skeleton component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ComponentKind {
    Circle,
    Interval,
}

impl fmt::Display for ComponentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentKind::Circle => write!(f, "circle"),
            ComponentKind::Interval => write!(f, "interval"),
        }
    }
}

/// The underlying compact oriented 1-manifold: an ordered list of components.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Skeleton {
    pub components: Vec<ComponentKind>,
}

impl Skeleton {
    pub fn new(components: Vec<ComponentKind>) -> Self {
        Skeleton { components }
    }

    /// Number of components.
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Kind of the 1-based component `i`. Panics if out of range.
    pub fn kind(&self, i: usize) -> ComponentKind {
        self.components[i - 1]
    }
}

/// Sign of a cut-point (or of a crossing in a Gauss code).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `+1` or `-1`.
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn opposite(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Plus => write!(f, "+"),
            Sign::Minus => write!(f, "-"),
        }
    }
}

/// Reference to a region: 1-based component index, 0-based region index.
///
/// Serialized as `i.j`, e.g. `2.0` for the basepoint region of component 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RegionRef {
    pub component: usize,
    pub region: usize,
}

impl RegionRef {
    pub fn new(component: usize, region: usize) -> Self {
        RegionRef { component, region }
    }
}

impl fmt::Display for RegionRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.component, self.region)
    }
}

/// A signed, labeled cut-point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CutPoint {
    pub sign: Sign,
    pub label: RegionRef,
}

impl CutPoint {
    pub fn new(sign: Sign, label: RegionRef) -> Self {
        CutPoint { sign, label }
    }
}

/// A single violation found by [`CutDiagram::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// 1-based component carrying the offending cut-point.
    pub component: usize,
    /// 1-based cut-point index on that component.
    pub cut_point: usize,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "component {}, cut-point {}: {}",
            self.component, self.cut_point, self.message
        )
    }
}

/// Outcome of validating a diagram: either clean or a list of violations.
#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A 1-dimensional cut-diagram.
///
/// `cut_points[c]` lists the cut-points of the 1-based component `c + 1` in
/// orientation order.  The structure is plain data; use
/// [`CutDiagram::validate`] to check that every label references an existing
/// region.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CutDiagram {
    pub skeleton: Skeleton,
    pub cut_points: Vec<Vec<CutPoint>>,
}

impl CutDiagram {
    /// A diagram without cut-points on the given skeleton.
    pub fn empty(skeleton: Skeleton) -> Self {
        let n = skeleton.len();
        CutDiagram {
            skeleton,
            cut_points: vec![Vec::new(); n],
        }
    }

    /// Builds a diagram and asserts the component/cut-point lists line up.
    pub fn new(skeleton: Skeleton, cut_points: Vec<Vec<CutPoint>>) -> Self {
        assert_eq!(
            skeleton.len(),
            cut_points.len(),
            "one cut-point list per component"
        );
        CutDiagram {
            skeleton,
            cut_points,
        }
    }

    /// Number of components.
    pub fn component_count(&self) -> usize {
        self.skeleton.len()
    }

    /// Cut-points of the 1-based component `i`.
    pub fn component(&self, i: usize) -> &[CutPoint] {
        &self.cut_points[i - 1]
    }

    /// Total number of cut-points over all components.
    pub fn cut_point_count(&self) -> usize {
        self.cut_points.iter().map(|v| v.len()).sum()
    }

    /// Number of regions of the 1-based component `i`.
    ///
    /// An interval with `k` cut-points has `k + 1` regions; a circle has
    /// `max(k, 1)` regions.
    pub fn region_count(&self, i: usize) -> usize {
        let k = self.cut_points[i - 1].len();
        match self.skeleton.kind(i) {
            ComponentKind::Interval => k + 1,
            ComponentKind::Circle => k.max(1),
        }
    }

    /// Iterates over all regions of the diagram in (component, region) order.
    pub fn regions(&self) -> impl Iterator<Item = RegionRef> + '_ {
        (1..=self.component_count())
            .flat_map(move |c| (0..self.region_count(c)).map(move |r| RegionRef::new(c, r)))
    }

    /// The region immediately preceding the 1-based cut-point `pos` of
    /// component `c` (with circular wrap-around on circles).
    pub fn region_before(&self, c: usize, pos: usize) -> RegionRef {
        let k = self.cut_points[c - 1].len();
        debug_assert!(pos >= 1 && pos <= k);
        let r = match self.skeleton.kind(c) {
            ComponentKind::Interval => pos - 1,
            ComponentKind::Circle => (pos - 1) % k,
        };
        RegionRef::new(c, r)
    }

    /// The region immediately following the 1-based cut-point `pos` of
    /// component `c` (with circular wrap-around on circles).
    pub fn region_after(&self, c: usize, pos: usize) -> RegionRef {
        let k = self.cut_points[c - 1].len();
        debug_assert!(pos >= 1 && pos <= k);
        let r = match self.skeleton.kind(c) {
            ComponentKind::Interval => pos,
            ComponentKind::Circle => pos % k,
        };
        RegionRef::new(c, r)
    }

    /// Checks that every cut-point label references an existing region.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let n = self.component_count();
        for c in 1..=n {
            for (idx, p) in self.component(c).iter().enumerate() {
                let label = p.label;
                if label.component == 0 || label.component > n {
                    violations.push(Violation {
                        component: c,
                        cut_point: idx + 1,
                        message: format!(
                            "label {} references a component out of range (diagram has {})",
                            label, n
                        ),
                    });
                } else if label.region >= self.region_count(label.component) {
                    violations.push(Violation {
                        component: c,
                        cut_point: idx + 1,
                        message: format!(
                            "label {} references a region out of range (component {} has {})",
                            label,
                            label.component,
                            self.region_count(label.component)
                        ),
                    });
                }
            }
        }
        ValidationReport { violations }
    }

    /// Signed count matrix of the cut-points.
    ///
    /// Entry `(j, i)` (row `j`, column `i`, both 1-based) is the signed count
    /// of cut-points lying on component `i` whose label lies on component
    /// `j`.  The diagonal therefore counts self-labeled cut-points
    /// (writhe-like); an off-diagonal entry `(j, i)` is the linking-type
    /// count of component `i` through component `j`.
    pub fn linking_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.component_count();
        let mut m = vec![vec![0i64; n]; n];
        for i in 1..=n {
            for p in self.component(i) {
                m[p.label.component - 1][i - 1] += p.sign.as_i64();
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hopf() -> CutDiagram {
        CutDiagram::new(
            Skeleton::new(vec![ComponentKind::Circle, ComponentKind::Circle]),
            vec![
                vec![CutPoint::new(Sign::Plus, RegionRef::new(2, 0))],
                vec![CutPoint::new(Sign::Plus, RegionRef::new(1, 0))],
            ],
        )
    }

    #[test]
    fn region_counts() {
        let d = CutDiagram::new(
            Skeleton::new(vec![ComponentKind::Circle, ComponentKind::Interval]),
            vec![
                vec![
                    CutPoint::new(Sign::Plus, RegionRef::new(1, 0)),
                    CutPoint::new(Sign::Minus, RegionRef::new(2, 1)),
                ],
                vec![CutPoint::new(Sign::Plus, RegionRef::new(1, 1))],
            ],
        );
        assert_eq!(d.region_count(1), 2); // circle, k = 2
        assert_eq!(d.region_count(2), 2); // interval, k = 1
        assert!(d.validate().ok());
    }

    #[test]
    fn empty_circle_has_one_region() {
        let d = CutDiagram::empty(Skeleton::new(vec![ComponentKind::Circle]));
        assert_eq!(d.region_count(1), 1);
    }

    #[test]
    fn neighbor_regions_wrap_on_circles() {
        let d = CutDiagram::new(
            Skeleton::new(vec![ComponentKind::Circle]),
            vec![vec![
                CutPoint::new(Sign::Plus, RegionRef::new(1, 0)),
                CutPoint::new(Sign::Plus, RegionRef::new(1, 1)),
                CutPoint::new(Sign::Plus, RegionRef::new(1, 2)),
            ]],
        );
        assert_eq!(d.region_before(1, 1), RegionRef::new(1, 0));
        assert_eq!(d.region_after(1, 1), RegionRef::new(1, 1));
        assert_eq!(d.region_before(1, 3), RegionRef::new(1, 2));
        assert_eq!(d.region_after(1, 3), RegionRef::new(1, 0)); // wrap
    }

    #[test]
    fn validate_flags_dangling_labels() {
        let d = CutDiagram::new(
            Skeleton::new(vec![ComponentKind::Circle]),
            vec![vec![CutPoint::new(Sign::Plus, RegionRef::new(3, 0))]],
        );
        let report = d.validate();
        assert_eq!(report.violations.len(), 1);
        assert_eq!(report.violations[0].component, 1);
        assert_eq!(report.violations[0].cut_point, 1);
    }

    #[test]
    fn validate_flags_region_out_of_range() {
        // A circle with one cut-point has only region 0.
        let d = CutDiagram::new(
            Skeleton::new(vec![ComponentKind::Circle]),
            vec![vec![CutPoint::new(Sign::Plus, RegionRef::new(1, 1))]],
        );
        assert!(!d.validate().ok());
    }

    #[test]
    fn hopf_linking_matrix() {
        let m = hopf().linking_matrix();
        assert_eq!(m, vec![vec![0, 1], vec![1, 0]]);
    }
}
