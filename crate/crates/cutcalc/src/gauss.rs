//! Gauss codes and their conversion to cut-diagrams.
//!
//! A Gauss code records, along each component, the sequence of over- and
//! under-passages through the crossings of a (virtual) link diagram.  The
//! conversion forgets everything about an over-passage except the region in
//! which it sits: each under-token becomes a cut-point whose sign is the
//! crossing sign and whose label is the region containing the matching
//! over-token.  Since only the region of the over-token matters, two codes
//! differing by swapping adjacent over-tokens convert to the same diagram.

use crate::diagram::{ComponentKind, CutDiagram, CutPoint, RegionRef, Sign, Skeleton};
use thiserror::Error;

/// Role of a token: over-passage or under-passage.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    Over,
    Under,
}

/// One token of a Gauss code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GaussToken {
    /// Crossing identifier; each id occurs exactly twice in a code.
    pub crossing: usize,
    pub role: Role,
    pub sign: Sign,
}

/// A Gauss code: one token sequence per component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussCode {
    pub skeleton: Skeleton,
    pub tokens: Vec<Vec<GaussToken>>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GaussError {
    #[error("crossing {0} occurs {1} times (expected exactly 2)")]
    BadMultiplicity(usize, usize),
    #[error("crossing {0} must occur once as over and once as under")]
    RoleMismatch(usize),
    #[error("crossing {0} carries two different signs")]
    SignMismatch(usize),
    #[error("line {line}: cannot parse token {token:?}")]
    BadToken { line: usize, token: String },
    #[error("empty Gauss code")]
    Empty,
}

impl GaussCode {
    pub fn new(skeleton: Skeleton, tokens: Vec<Vec<GaussToken>>) -> Self {
        assert_eq!(skeleton.len(), tokens.len());
        GaussCode { skeleton, tokens }
    }

    /// Checks the pairing invariants: every crossing id occurs exactly twice,
    /// once as over and once as under, with a consistent sign.
    pub fn validate(&self) -> Result<(), GaussError> {
        use std::collections::BTreeMap;
        let mut seen: BTreeMap<usize, Vec<GaussToken>> = BTreeMap::new();
        for comp in &self.tokens {
            for t in comp {
                seen.entry(t.crossing).or_default().push(*t);
            }
        }
        for (id, ts) in &seen {
            if ts.len() != 2 {
                return Err(GaussError::BadMultiplicity(*id, ts.len()));
            }
            if ts[0].role == ts[1].role {
                return Err(GaussError::RoleMismatch(*id));
            }
            if ts[0].sign != ts[1].sign {
                return Err(GaussError::SignMismatch(*id));
            }
        }
        Ok(())
    }
}

/// Converts a Gauss code to a cut-diagram.
///
/// Cut-points are the under-tokens of each component, in token order; the
/// label of the cut-point for crossing `x` is the region containing the
/// over-token of `x`, i.e. the region entered after the last under-token
/// preceding it (for circles, counting wraps around the basepoint).
pub fn parse_gauss(code: &GaussCode) -> Result<CutDiagram, GaussError> {
    code.validate()?;
    let n = code.skeleton.len();

    // Position of the over-token of each crossing, and per-component counts
    // of under-tokens strictly before each token position.
    use std::collections::BTreeMap;
    let mut over_region: BTreeMap<usize, RegionRef> = BTreeMap::new();
    let mut under_count: Vec<usize> = Vec::new();
    for c in 1..=n {
        under_count.push(
            code.tokens[c - 1]
                .iter()
                .filter(|t| t.role == Role::Under)
                .count(),
        );
    }
    for c in 1..=n {
        let k = under_count[c - 1];
        let mut before = 0usize;
        for t in &code.tokens[c - 1] {
            match t.role {
                Role::Under => before += 1,
                Role::Over => {
                    let region = match code.skeleton.kind(c) {
                        ComponentKind::Interval => before,
                        ComponentKind::Circle => {
                            if k == 0 {
                                0
                            } else {
                                before % k
                            }
                        }
                    };
                    over_region.insert(t.crossing, RegionRef::new(c, region));
                }
            }
        }
    }

    let mut cut_points = Vec::with_capacity(n);
    for c in 1..=n {
        let mut pts = Vec::new();
        for t in &code.tokens[c - 1] {
            if t.role == Role::Under {
                let label = over_region[&t.crossing];
                pts.push(CutPoint::new(t.sign, label));
            }
        }
        cut_points.push(pts);
    }
    Ok(CutDiagram::new(code.skeleton.clone(), cut_points))
}

/// Parses a compact text form of a Gauss code.
///
/// One component per nonempty line, an optional leading `circle` or
/// `interval` keyword (default `circle`), then whitespace-separated tokens
/// `O<id><sign>` / `U<id><sign>`, e.g.:
///
/// ```text
/// circle O1+ U2+ O3+ U1+ O2+ U3+
/// ```
pub fn parse_gauss_text(text: &str) -> Result<GaussCode, GaussError> {
    let mut kinds = Vec::new();
    let mut tokens = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace().peekable();
        let kind = match parts.peek() {
            Some(&"circle") => {
                parts.next();
                ComponentKind::Circle
            }
            Some(&"interval") => {
                parts.next();
                ComponentKind::Interval
            }
            _ => ComponentKind::Circle,
        };
        let mut comp = Vec::new();
        for raw in parts {
            comp.push(parse_token(raw).ok_or_else(|| GaussError::BadToken {
                line: lineno + 1,
                token: raw.to_string(),
            })?);
        }
        kinds.push(kind);
        tokens.push(comp);
    }
    if kinds.is_empty() {
        return Err(GaussError::Empty);
    }
    Ok(GaussCode::new(Skeleton::new(kinds), tokens))
}

fn parse_token(raw: &str) -> Option<GaussToken> {
    let role = match raw.as_bytes().first()? {
        b'O' | b'o' => Role::Over,
        b'U' | b'u' => Role::Under,
        _ => return None,
    };
    let sign = match raw.as_bytes().last()? {
        b'+' => Sign::Plus,
        b'-' => Sign::Minus,
        _ => return None,
    };
    let crossing: usize = raw[1..raw.len() - 1].parse().ok()?;
    Some(GaussToken {
        crossing,
        role,
        sign,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hopf_code_converts_to_the_expected_diagram() {
        let code = parse_gauss_text("circle O1+ U2+\ncircle O2+ U1+").unwrap();
        let d = parse_gauss(&code).unwrap();
        assert_eq!(d.component_count(), 2);
        assert_eq!(
            d.component(1),
            &[CutPoint::new(Sign::Plus, RegionRef::new(2, 0))]
        );
        assert_eq!(
            d.component(2),
            &[CutPoint::new(Sign::Plus, RegionRef::new(1, 0))]
        );
    }

    #[test]
    fn trefoil_code_converts_to_three_self_labels() {
        let code = parse_gauss_text("circle O1+ U2+ O3+ U1+ O2+ U3+").unwrap();
        let d = parse_gauss(&code).unwrap();
        assert_eq!(d.component_count(), 1);
        assert_eq!(
            d.component(1),
            &[
                CutPoint::new(Sign::Plus, RegionRef::new(1, 2)),
                CutPoint::new(Sign::Plus, RegionRef::new(1, 0)),
                CutPoint::new(Sign::Plus, RegionRef::new(1, 1)),
            ]
        );
        let m = d.linking_matrix();
        assert_eq!(m, vec![vec![3]]);
    }

    #[test]
    fn kink_labels_itself() {
        let code = parse_gauss_text("circle O1+ U1+").unwrap();
        let d = parse_gauss(&code).unwrap();
        assert_eq!(
            d.component(1),
            &[CutPoint::new(Sign::Plus, RegionRef::new(1, 0))]
        );
    }

    #[test]
    fn swapping_adjacent_over_tokens_is_invisible() {
        // Two over-tokens in the same region may be listed in either order.
        let a = parse_gauss_text("circle O1+ O2+ U1+ U2+").unwrap();
        let b = parse_gauss_text("circle O2+ O1+ U1+ U2+").unwrap();
        assert_eq!(parse_gauss(&a).unwrap(), parse_gauss(&b).unwrap());
    }

    #[test]
    fn pairing_violations_are_reported() {
        let double_over = parse_gauss_text("circle O1+ O1+").unwrap();
        assert_eq!(
            parse_gauss(&double_over).unwrap_err(),
            GaussError::RoleMismatch(1)
        );
        let sign_clash = parse_gauss_text("circle O1+ U1-").unwrap();
        assert_eq!(
            parse_gauss(&sign_clash).unwrap_err(),
            GaussError::SignMismatch(1)
        );
        let once = parse_gauss_text("circle O1+").unwrap();
        assert_eq!(
            parse_gauss(&once).unwrap_err(),
            GaussError::BadMultiplicity(1, 1)
        );
    }

    #[test]
    fn interval_components_use_linear_regions() {
        // One interval passing under a circle once, over it once.
        let code = parse_gauss_text("interval U1+ O2+\ncircle O1+ U2+").unwrap();
        let d = parse_gauss(&code).unwrap();
        assert_eq!(d.skeleton.kind(1), ComponentKind::Interval);
        // O2 sits after the single under-token of component 1 -> region 1.
        assert_eq!(
            d.component(2),
            &[CutPoint::new(Sign::Plus, RegionRef::new(1, 1))]
        );
    }
}
