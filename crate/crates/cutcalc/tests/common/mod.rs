//! Independent reference implementations used to cross-check the library.
//!
//! Everything here is written naively and directly from the definitions:
//! letter-by-letter free reduction, a sparse polynomial ring keyed by index
//! sequences, a recursive reduction map, and an invariant table built from
//! those.  The library implements the same definitions with dense tables and
//! memoization; the tests require that both agree.

#![allow(dead_code)]

use cutcalc::{ComponentKind, CutDiagram, CutPoint, RegionRef, Sign, Skeleton};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// A word as a flat list of `(generator, ±1)` letters.
pub type Letters<T> = Vec<(T, i64)>;

/// Stack-based free reduction: push letters one at a time, cancelling exact
/// inverses at the top of the stack.
pub fn naive_reduce<T: PartialEq + Copy>(letters: &[(T, i64)]) -> Letters<T> {
    let mut stack: Letters<T> = Vec::new();
    for &(g, e) in letters {
        debug_assert!(e == 1 || e == -1);
        match stack.last() {
            Some(&(h, f)) if h == g && f == -e => {
                stack.pop();
            }
            _ => stack.push((g, e)),
        }
    }
    stack
}

pub fn invert_letters<T: Copy>(letters: &[(T, i64)]) -> Letters<T> {
    letters.iter().rev().map(|&(g, e)| (g, -e)).collect()
}

/// Expands a run-length pair into single letters.
pub fn spell<T: Copy>(pairs: &[(T, i64)]) -> Letters<T> {
    let mut out = Vec::new();
    for &(g, e) in pairs {
        let s = if e >= 0 { 1 } else { -1 };
        for _ in 0..e.unsigned_abs() {
            out.push((g, s));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Sparse truncated polynomials over non-commuting variables X_1 … X_n.
// ---------------------------------------------------------------------------

/// Monomials are index sequences; the map sends a sequence to its coefficient.
pub type Poly = BTreeMap<Vec<usize>, BigInt>;

pub fn poly_one() -> Poly {
    let mut p = Poly::new();
    p.insert(Vec::new(), BigInt::one());
    p
}

fn poly_insert(p: &mut Poly, m: Vec<usize>, c: BigInt) {
    use std::collections::btree_map::Entry;
    if c.is_zero() {
        return;
    }
    // Keep exact zeros out so polynomial comparisons are canonical.
    match p.entry(m) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

fn has_repeat(m: &[usize]) -> bool {
    m.iter().enumerate().any(|(i, x)| m[..i].contains(x))
}

pub fn poly_mul(a: &Poly, b: &Poly, max_deg: usize, reduced: bool) -> Poly {
    let mut out = Poly::new();
    for (m1, c1) in a {
        for (m2, c2) in b {
            if m1.len() + m2.len() > max_deg {
                continue;
            }
            let mut m = m1.clone();
            m.extend_from_slice(m2);
            if reduced && has_repeat(&m) {
                continue;
            }
            poly_insert(&mut out, m, c1 * c2);
        }
    }
    out
}

/// `(1 + X_i)^e` for `e = ±1`, truncated at total degree `max_deg`.
pub fn poly_gen_power(i: usize, e: i64, max_deg: usize, reduced: bool) -> Poly {
    let mut p = Poly::new();
    let top = if reduced { max_deg.min(1) } else { max_deg };
    for t in 0..=top {
        let coeff = if e == 1 {
            if t <= 1 {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        } else {
            // (1 + X)^{-1} = 1 - X + X² - …
            if t % 2 == 0 {
                BigInt::one()
            } else {
                -BigInt::one()
            }
        };
        poly_insert(&mut p, vec![i; t], coeff);
    }
    p
}

/// Expansion of a word on component generators: `R_i ↦ 1 + X_i`.
pub fn oracle_expand(letters: &[(usize, i64)], max_deg: usize, reduced: bool) -> Poly {
    let mut acc = poly_one();
    for &(i, e) in &spell(letters) {
        let f = poly_gen_power(i, e, max_deg, reduced);
        acc = poly_mul(&acc, &f, max_deg, reduced);
    }
    acc
}

/// Reference lower-central-series test: the expansion carries no term of
/// degree `1 ≤ d < q`.
pub fn oracle_in_lcs(letters: &[(usize, i64)], q: usize) -> bool {
    if q <= 1 {
        return true;
    }
    let p = oracle_expand(letters, q - 1, false);
    p.iter().all(|(m, c)| m.is_empty() || c.is_zero())
}

// ---------------------------------------------------------------------------
// Naive reduction maps and longitude words.
// ---------------------------------------------------------------------------

/// Raw word of the canonical road of region `r`, as single letters on regions.
fn road_letters(d: &CutDiagram, r: RegionRef) -> Letters<RegionRef> {
    let mut v = Vec::new();
    for pos in 1..=r.region {
        let p = d.component(r.component)[pos - 1];
        v.push((p.label, p.sign.as_i64()));
    }
    v
}

/// Level-`q` reduction of a single region generator, directly from the
/// recursion: level 1 and basepoint regions map to the component generator;
/// otherwise conjugate it by the level-`(q-1)` image of the road word.
pub fn oracle_eta(d: &CutDiagram, q: usize, r: RegionRef) -> Letters<usize> {
    if q <= 1 || r.region == 0 {
        return vec![(r.component, 1)];
    }
    let v = oracle_eta_word(d, q - 1, &road_letters(d, r));
    let mut out = invert_letters(&v);
    out.push((r.component, 1));
    out.extend(v);
    naive_reduce(&out)
}

/// Homomorphic image of a word on region generators.
pub fn oracle_eta_word(d: &CutDiagram, q: usize, w: &[(RegionRef, i64)]) -> Letters<usize> {
    let mut out = Vec::new();
    for &(r, e) in &spell(w) {
        let img = oracle_eta(d, q, r);
        if e == 1 {
            out.extend(img);
        } else {
            out.extend(invert_letters(&img));
        }
    }
    naive_reduce(&out)
}

/// Longitude of component `c` as letters on regions (framing-corrected).
pub fn oracle_longitude(d: &CutDiagram, c: usize) -> Letters<RegionRef> {
    let pts = d.component(c);
    let corr: i64 = pts
        .iter()
        .filter(|p| p.label.component == c)
        .map(|p| p.sign.as_i64())
        .sum();
    let mut w = vec![(RegionRef::new(c, 0), -corr)];
    for p in pts {
        w.push((p.label, p.sign.as_i64()));
    }
    spell(&w)
}

// ---------------------------------------------------------------------------
// Reference invariant table.
// ---------------------------------------------------------------------------

/// Table mapping an index sequence to `(value, modulus)`; modulus 0 means the
/// value is an exact integer.
pub type OracleTable = BTreeMap<Vec<usize>, (BigInt, BigInt)>;

fn subsequences_with_deletion(key: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let k = key.len();
    for mask in 0..(1u32 << k) {
        if mask.count_ones() as usize == k {
            continue; // must delete at least one index
        }
        let sub: Vec<usize> = (0..k)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| key[i])
            .collect();
        if sub.len() >= 2 {
            out.push(sub);
        }
    }
    out
}

fn rotations(key: &[usize]) -> Vec<Vec<usize>> {
    (0..key.len())
        .map(|s| {
            let mut r = key[s..].to_vec();
            r.extend_from_slice(&key[..s]);
            r
        })
        .collect()
}

/// Indeterminacy of `key`: the gcd of the stored values at every cyclic
/// rotation of every proper subsequence (length ≥ 2) of `key`.
pub fn oracle_delta(table: &OracleTable, key: &[usize]) -> BigInt {
    let mut g = BigInt::zero();
    for sub in subsequences_with_deletion(key) {
        for rot in rotations(&sub) {
            if let Some((v, _)) = table.get(&rot) {
                g = g.gcd(v);
            }
        }
    }
    g.abs()
}

fn keys_of_length(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|k| {
                (1..=n).map(move |i| {
                    let mut k2 = k.clone();
                    k2.push(i);
                    k2
                })
            })
            .collect();
    }
    out
}

/// Builds the full invariant table up to sequence length `maxlen`,
/// independently of the library: expand the level-`maxlen` reduction of each
/// longitude and read off coefficients, reducing circle entries by the
/// indeterminacy of the key.
pub fn oracle_milnor(d: &CutDiagram, maxlen: usize, reduced: bool) -> OracleTable {
    let n = d.component_count();
    let mut expansions: Vec<Poly> = Vec::with_capacity(n);
    for j in 1..=n {
        let lambda = oracle_longitude(d, j);
        let eta = oracle_eta_word(d, maxlen, &lambda);
        expansions.push(oracle_expand(&eta, maxlen.saturating_sub(1), reduced));
    }
    let mut table = OracleTable::new();
    for len in 2..=maxlen {
        for key in keys_of_length(n, len) {
            if reduced && has_repeat(&key) {
                continue;
            }
            let j = *key.last().unwrap();
            let prefix = key[..len - 1].to_vec();
            let raw = expansions[j - 1]
                .get(&prefix)
                .cloned()
                .unwrap_or_else(BigInt::zero);
            let modulus = match d.skeleton.kind(j) {
                ComponentKind::Circle => oracle_delta(&table, &key),
                ComponentKind::Interval => BigInt::zero(),
            };
            let value = if modulus.is_zero() {
                raw
            } else {
                raw.mod_floor(&modulus)
            };
            table.insert(key, (value, modulus));
        }
    }
    table
}

// ---------------------------------------------------------------------------
// Fixtures.
// ---------------------------------------------------------------------------

pub fn hopf() -> CutDiagram {
    cutcalc::gauss::parse_gauss(
        &cutcalc::gauss::parse_gauss_text("circle O1+ U2+\ncircle O2+ U1+").unwrap(),
    )
    .unwrap()
}

pub fn trefoil() -> CutDiagram {
    cutcalc::gauss::parse_gauss(
        &cutcalc::gauss::parse_gauss_text("circle O1+ U2+ O3+ U1+ O2+ U3+").unwrap(),
    )
    .unwrap()
}

pub fn borromean() -> CutDiagram {
    cutcalc::gauss::parse_gauss(
        &cutcalc::gauss::parse_gauss_text(
            "circle O1+ U2- O4- U5+\ncircle U1+ O3+ U4- O6-\ncircle O2- U3+ O5+ U6-",
        )
        .unwrap(),
    )
    .unwrap()
}

/// The Whitehead link as a cut-diagram (clasp component second; the
/// self-virtualization point of the clasp is its first cut-point).
pub fn whitehead() -> CutDiagram {
    CutDiagram::new(
        Skeleton::new(vec![ComponentKind::Circle, ComponentKind::Circle]),
        vec![
            vec![
                CutPoint::new(Sign::Minus, RegionRef::new(2, 0)),
                CutPoint::new(Sign::Plus, RegionRef::new(2, 1)),
            ],
            vec![
                CutPoint::new(Sign::Plus, RegionRef::new(2, 2)),
                CutPoint::new(Sign::Plus, RegionRef::new(1, 0)),
                CutPoint::new(Sign::Minus, RegionRef::new(1, 1)),
            ],
        ],
    )
}

pub fn unlink(n: usize) -> CutDiagram {
    CutDiagram::new(
        Skeleton::new(vec![ComponentKind::Circle; n]),
        vec![Vec::new(); n],
    )
}
