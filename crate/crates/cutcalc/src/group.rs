//! The group of a cut-diagram.
//!
//! Every region of a cut-diagram contributes one generator, and every
//! cut-point contributes one relation tying the regions on its two sides
//! together through the label: if a cut-point with sign `ε` and label `C`
//! separates the incoming region `A` from the outgoing region `B`, the
//! relation is `B⁻¹ C⁻ᵉ A Cᵉ`, i.e. `B = C⁻ᵉ A Cᵉ`.
//!
//! The module also computes the words naturally carried by paths in the
//! underlying 1-manifold: the *raw* word `w̃` of a path is the product of
//! `labelᵉ` over the cut-points it traverses, and the based word of a loop
//! corrects `w̃` by a power of the starting region so that the longitude of
//! a component is null-homologous on its own component.

use crate::diagram::{CutDiagram, RegionRef};
use crate::word::Word;
use std::fmt;

/// A finite presentation with one generator per region.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<RegionRef>,
    pub relations: Vec<Word<RegionRef>>,
}

/// Builds the presentation of the group of `d`.
///
/// Generators are all regions in `(component, region)` order; relations are
/// listed per component in cut-point order.
pub fn presentation(d: &CutDiagram) -> Presentation {
    let generators = d.regions().collect();
    let mut relations = Vec::with_capacity(d.cut_point_count());
    for c in 1..=d.component_count() {
        for pos in 1..=d.component(c).len() {
            relations.push(cut_point_relation(d, c, pos));
        }
    }
    Presentation {
        generators,
        relations,
    }
}

/// The relation `B⁻¹ C⁻ᵉ A Cᵉ` contributed by cut-point `pos` of component `c`.
pub fn cut_point_relation(d: &CutDiagram, c: usize, pos: usize) -> Word<RegionRef> {
    let p = d.component(c)[pos - 1];
    let a = d.region_before(c, pos);
    let b = d.region_after(c, pos);
    let e = p.sign.as_i64();
    Word::from_letters(vec![(b, -1), (p.label, -e), (a, 1), (p.label, e)])
}

/// Raw word `w̃` of the path along component `c` that starts in the region
/// before cut-point `from` and ends in the region after cut-point `to`
/// (inclusive range of traversed cut-points; `from > to` gives the empty
/// word, i.e. a path staying inside one region).
pub fn raw_path_word(d: &CutDiagram, c: usize, from: usize, to: usize) -> Word<RegionRef> {
    let mut w = Word::one();
    for pos in from..=to.min(d.component(c).len()) {
        let p = d.component(c)[pos - 1];
        w.push(p.label, p.sign.as_i64());
    }
    w
}

/// Raw word of the full traversal of component `c`, from its basepoint (or
/// initial endpoint) across every cut-point in order.
pub fn traversal_word(d: &CutDiagram, c: usize) -> Word<RegionRef> {
    raw_path_word(d, c, 1, d.component(c).len())
}

/// Raw word of the canonical road from the basepoint region of component `c`
/// to its region `j`: the orientation-following path across `p₁ … p_j`.
pub fn prefix_word(d: &CutDiagram, c: usize, j: usize) -> Word<RegionRef> {
    raw_path_word(d, c, 1, j)
}

/// Self-crossing count of the path across cut-points `from..=to` of
/// component `c`: the signed number of traversed cut-points whose label
/// lies on `c` itself.
pub fn self_count(d: &CutDiagram, c: usize, from: usize, to: usize) -> i64 {
    d.component(c)[from.saturating_sub(1)..to.min(d.component(c).len())]
        .iter()
        .filter(|p| p.label.component == c)
        .map(|p| p.sign.as_i64())
        .sum()
}

/// The meridian of component `c`: the generator of its basepoint region.
pub fn meridian(d: &CutDiagram, c: usize) -> Word<RegionRef> {
    let _ = d.component(c);
    Word::generator(RegionRef::new(c, 0), 1)
}

/// The longitude of component `c`: the based word of its full traversal,
/// `R₀^{-|γ|} · w̃`, where the framing correction `|γ|` is the signed count
/// of self-labelled cut-points (the diagonal of the linking matrix).
pub fn longitude(d: &CutDiagram, c: usize) -> Word<RegionRef> {
    let corr = self_count(d, c, 1, d.component(c).len());
    let mut w = Word::from_letters(vec![(RegionRef::new(c, 0), -corr)]);
    w = w.mul(&traversal_word(d, c));
    w
}

/// Abelianization of a presentation, as (free rank, torsion coefficients).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Abelianization {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl fmt::Display for Abelianization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.free_rank > 0 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            parts.push("0".to_string());
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Computes the abelianization of `p` via the Smith normal form of the
/// relation matrix.
pub fn abelianization(p: &Presentation) -> Abelianization {
    use std::collections::BTreeMap;
    let index: BTreeMap<RegionRef, usize> = p
        .generators
        .iter()
        .enumerate()
        .map(|(i, g)| (*g, i))
        .collect();
    let cols = p.generators.len();
    let mut mat: Vec<Vec<i128>> = Vec::new();
    for rel in &p.relations {
        let mut row = vec![0i128; cols];
        for (g, e) in rel.letters() {
            row[index[g]] += *e as i128;
        }
        mat.push(row);
    }
    let divisors = smith_invariants(mat, cols);
    let nonzero = divisors.iter().filter(|d| **d != 0).count();
    Abelianization {
        free_rank: cols - nonzero,
        torsion: divisors
            .iter()
            .filter(|d| **d > 1)
            .map(|d| *d as u64)
            .collect(),
    }
}

/// Diagonal entries of the Smith normal form of an integer matrix (one per
/// column; zero entries mean free directions).
fn smith_invariants(mut mat: Vec<Vec<i128>>, cols: usize) -> Vec<i128> {
    let rows = mat.len();
    let mut divisors = vec![0i128; cols];
    for c in 0..cols.min(rows) {
        loop {
            // Pick the pivot with the smallest nonzero magnitude in the
            // remaining block and move it to (c, c).
            let mut pivot: Option<(usize, usize)> = None;
            for i in c..rows {
                for j in c..cols {
                    if mat[i][j] != 0
                        && pivot.is_none_or(|(pi, pj)| mat[i][j].abs() < mat[pi][pj].abs())
                    {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                return divisors;
            };
            mat.swap(c, pi);
            for row in mat.iter_mut() {
                row.swap(c, pj);
            }
            let p = mat[c][c];
            // Clear the pivot row and column; if a remainder survives, loop
            // to pick a smaller pivot.
            let mut clean = true;
            let pivot_row = mat[c].clone();
            for (i, row) in mat.iter_mut().enumerate() {
                if i != c && row[c] != 0 {
                    let q = row[c].div_euclid(p);
                    for (x, pv) in row.iter_mut().zip(&pivot_row) {
                        *x -= q * pv;
                    }
                    clean &= row[c] == 0;
                }
            }
            for j in 0..cols {
                if j != c && mat[c][j] != 0 {
                    let q = mat[c][j].div_euclid(p);
                    for row in mat.iter_mut() {
                        let t = q * row[c];
                        row[j] -= t;
                    }
                    clean &= mat[c][j] == 0;
                }
            }
            if clean {
                divisors[c] = p.abs();
                break;
            }
        }
    }
    // Normalize divisibility d₁ | d₂ | …
    for i in 0..cols {
        for j in i + 1..cols {
            let (a, b) = (divisors[i], divisors[j]);
            if a != 0 && b != 0 && b % a != 0 {
                let g = gcd(a, b);
                divisors[i] = g;
                divisors[j] = a / g * b;
            }
        }
    }
    divisors
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{ComponentKind, CutPoint, Sign, Skeleton};
    use crate::gauss::{parse_gauss, parse_gauss_text};

    fn hopf() -> CutDiagram {
        parse_gauss(&parse_gauss_text("circle O1+ U2+\ncircle O2+ U1+").unwrap()).unwrap()
    }

    #[test]
    fn hopf_relations_commute_basepoint_generators() {
        let p = presentation(&hopf());
        assert_eq!(p.generators.len(), 2);
        let a = RegionRef::new(1, 0);
        let b = RegionRef::new(2, 0);
        // Component 1's single cut-point: A = B = r_{1,0}, label r_{2,0}.
        assert_eq!(
            p.relations[0],
            Word::from_letters(vec![(a, -1), (b, -1), (a, 1), (b, 1)])
        );
        assert_eq!(
            p.relations[1],
            Word::from_letters(vec![(b, -1), (a, -1), (b, 1), (a, 1)])
        );
    }

    #[test]
    fn hopf_longitudes_are_the_other_meridian() {
        let d = hopf();
        assert_eq!(longitude(&d, 1), Word::generator(RegionRef::new(2, 0), 1));
        assert_eq!(longitude(&d, 2), Word::generator(RegionRef::new(1, 0), 1));
    }

    #[test]
    fn trefoil_longitude_is_null_homologous() {
        let d = parse_gauss(&parse_gauss_text("circle O1+ U2+ O3+ U1+ O2+ U3+").unwrap()).unwrap();
        let l = longitude(&d, 1);
        let total: i64 = l.letters().iter().map(|(_, e)| e).sum();
        assert_eq!(total, 0);
        assert_eq!(self_count(&d, 1, 1, 3), 3);
    }

    #[test]
    fn kink_relation_collapses() {
        let d = parse_gauss(&parse_gauss_text("circle O1+ U1+").unwrap()).unwrap();
        let p = presentation(&d);
        assert!(p.relations[0].is_one());
    }

    #[test]
    fn prefix_words_follow_the_orientation() {
        let d = parse_gauss(&parse_gauss_text("circle O1+ U2+ O3+ U1+ O2+ U3+").unwrap()).unwrap();
        assert!(prefix_word(&d, 1, 0).is_one());
        assert_eq!(
            prefix_word(&d, 1, 1),
            Word::generator(RegionRef::new(1, 2), 1)
        );
        assert_eq!(
            prefix_word(&d, 1, 2),
            Word::from_letters(vec![(RegionRef::new(1, 2), 1), (RegionRef::new(1, 0), 1)])
        );
    }

    #[test]
    fn abelianization_is_free_of_component_rank() {
        let d = hopf();
        let ab = abelianization(&presentation(&d));
        assert_eq!(
            ab,
            Abelianization {
                free_rank: 2,
                torsion: vec![]
            }
        );

        let t = parse_gauss(&parse_gauss_text("circle O1+ U2+ O3+ U1+ O2+ U3+").unwrap()).unwrap();
        let ab = abelianization(&presentation(&t));
        assert_eq!(ab.free_rank, 1);
        assert!(ab.torsion.is_empty());
    }

    #[test]
    fn smith_form_detects_torsion() {
        // ⟨x, y | x², y³⟩ abelianized: Z/2 + Z/3 = Z/6 after normalization.
        let x = RegionRef::new(1, 0);
        let y = RegionRef::new(2, 0);
        let p = Presentation {
            generators: vec![x, y],
            relations: vec![
                Word::from_letters(vec![(x, 2)]),
                Word::from_letters(vec![(y, 3)]),
            ],
        };
        let ab = abelianization(&p);
        assert_eq!(ab.free_rank, 0);
        assert_eq!(ab.torsion, vec![6]);
    }

    #[test]
    fn mixed_skeleton_presentation_counts() {
        let d = CutDiagram::new(
            Skeleton::new(vec![ComponentKind::Interval, ComponentKind::Circle]),
            vec![
                vec![CutPoint::new(Sign::Minus, RegionRef::new(2, 0))],
                vec![CutPoint::new(Sign::Plus, RegionRef::new(1, 1))],
            ],
        );
        let p = presentation(&d);
        // Interval with one cut-point has two regions; circle with one has one.
        assert_eq!(p.generators.len(), 3);
        assert_eq!(p.relations.len(), 2);
    }
}
