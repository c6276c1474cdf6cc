//! Truncated expansions of free-group words and the invariant tables read
//! off the longitudes of a cut-diagram.
//!
//! The expansion sends the generator `R_i` to `1 + X_i` in the ring of
//! formal power series on non-commuting variables `X_1 … X_n`, truncated
//! above a fixed total degree.  A word lies in the `q`-th lower central
//! series term of the free group exactly when its expansion is `1` below
//! degree `q`.
//!
//! The table of invariants of a diagram collects, for each index sequence
//! `i₁ … i_k j`, the coefficient of `X_{i₁} … X_{i_k}` in the expansion of
//! the reduced longitude of component `j`; entries whose last index is a
//! circle are only well defined modulo the indeterminacy of the sequence,
//! and are stored reduced by it.  The *reduced* variant kills every monomial
//! with a repeated variable and keeps only repeat-free sequences.

use crate::chen::RoadNetwork;
use crate::diagram::{ComponentKind, CutDiagram, RegionRef};
use crate::group::self_count;
use crate::word::Word;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// A polynomial on non-commuting variables `X_1 … X_n`, truncated above
/// total degree `max_deg`, with dense coefficient storage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    n: usize,
    max_deg: usize,
    reduced: bool,
    /// One coefficient per sequence over `{1 … n}` of length `≤ max_deg`,
    /// grouped by length, lexicographically within a length.
    coeffs: Vec<BigInt>,
}

fn offsets(n: usize, max_deg: usize) -> Vec<usize> {
    let mut off = Vec::with_capacity(max_deg + 2);
    off.push(0);
    let mut pow = 1usize;
    let mut total = 0usize;
    for _ in 0..=max_deg {
        total += pow;
        off.push(total);
        pow *= n.max(1);
    }
    off
}

fn has_repeat(m: &[usize]) -> bool {
    m.iter().enumerate().any(|(i, x)| m[..i].contains(x))
}

impl TruncatedSeries {
    pub fn zero(n: usize, max_deg: usize, reduced: bool) -> Self {
        let size = *offsets(n, max_deg).last().unwrap();
        TruncatedSeries {
            n,
            max_deg,
            reduced,
            coeffs: vec![BigInt::zero(); size],
        }
    }

    pub fn one(n: usize, max_deg: usize, reduced: bool) -> Self {
        let mut s = Self::zero(n, max_deg, reduced);
        s.coeffs[0] = BigInt::one();
        s
    }

    /// The expansion `1 + X_i` of a single generator.
    pub fn generator(n: usize, max_deg: usize, reduced: bool, i: usize) -> Self {
        Self::gen_power(n, max_deg, reduced, i, 1)
    }

    /// The expansion of `R_i^e`, i.e. `(1 + X_i)^e`, for any integer `e`
    /// (negative exponents via the geometric series).  In reduced mode this
    /// is `1 + e·X_i`.
    pub fn gen_power(n: usize, max_deg: usize, reduced: bool, i: usize, e: i64) -> Self {
        assert!(i >= 1 && i <= n, "generator index {i} out of range 1..={n}");
        let mut s = Self::zero(n, max_deg, reduced);
        let top = if reduced { max_deg.min(1) } else { max_deg };
        let off = offsets(n, max_deg);
        let mut c = BigInt::one();
        for (t, o) in off.iter().enumerate().take(top + 1) {
            if t > 0 {
                // C(e, t) = C(e, t-1) · (e - t + 1) / t, exact at each step.
                c *= BigInt::from(e - (t as i64) + 1);
                c /= BigInt::from(t as i64);
            }
            if c.is_zero() {
                break;
            }
            let value = (0..t).fold(0usize, |v, _| v * n + (i - 1));
            s.coeffs[o + value] = c.clone();
        }
        s
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn max_deg(&self) -> usize {
        self.max_deg
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    fn index_of(&self, seq: &[usize]) -> Option<usize> {
        if seq.len() > self.max_deg || seq.iter().any(|&i| i < 1 || i > self.n) {
            return None;
        }
        let off = offsets(self.n, self.max_deg);
        let value = seq.iter().fold(0usize, |v, &i| v * self.n + (i - 1));
        Some(off[seq.len()] + value)
    }

    fn seq_of(&self, idx: usize) -> Vec<usize> {
        let off = offsets(self.n, self.max_deg);
        let len = (0..=self.max_deg).find(|&l| idx < off[l + 1]).unwrap();
        let mut value = idx - off[len];
        let mut seq = vec![0usize; len];
        for t in (0..len).rev() {
            seq[t] = value % self.n + 1;
            value /= self.n;
        }
        seq
    }

    /// Coefficient of the monomial `X_{seq[0]} … X_{seq[k-1]}` (zero when the
    /// sequence is longer than the truncation).
    pub fn coefficient(&self, seq: &[usize]) -> BigInt {
        self.index_of(seq)
            .map(|i| self.coeffs[i].clone())
            .unwrap_or_else(BigInt::zero)
    }

    /// The nonzero monomials, in (length, lexicographic) order.
    pub fn monomials(&self) -> Vec<(Vec<usize>, BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.seq_of(i), c.clone()))
            .collect()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// Keeps only the monomials whose index sequence satisfies `keep` (the
    /// constant term always stays).
    pub fn filter_monomials<F: Fn(&[usize]) -> bool>(&self, keep: F) -> Self {
        let mut out = self.clone();
        for (i, c) in out.coeffs.iter_mut().enumerate() {
            if !c.is_zero() {
                let seq = self.seq_of(i);
                if !seq.is_empty() && !keep(&seq) {
                    *c = BigInt::zero();
                }
            }
        }
        out
    }

    fn add_assign(&mut self, other: &Self) {
        assert_eq!(
            (self.n, self.max_deg, self.reduced),
            (other.n, other.max_deg, other.reduced)
        );
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(
            (self.n, self.max_deg, self.reduced),
            (other.n, other.max_deg, other.reduced)
        );
        let off = offsets(self.n, self.max_deg);
        let mut pow = vec![1usize; self.max_deg + 1];
        for t in 1..=self.max_deg {
            pow[t] = pow[t - 1] * self.n.max(1);
        }
        let a = self.nonzero_packed(&off);
        let b = other.nonzero_packed(&off);
        let mut out = Self::zero(self.n, self.max_deg, self.reduced);
        for (l1, v1, m1, c1) in &a {
            for (l2, v2, m2, c2) in &b {
                if l1 + l2 > self.max_deg {
                    continue;
                }
                if self.reduced && (m1 & m2) != 0 {
                    continue;
                }
                out.coeffs[off[l1 + l2] + v1 * pow[*l2] + v2] += *c1 * *c2;
            }
        }
        out
    }

    /// `(length, value, variable bitmask, coefficient)` of each nonzero entry.
    fn nonzero_packed<'a>(&'a self, off: &[usize]) -> Vec<(usize, usize, u64, &'a BigInt)> {
        let mut out = Vec::new();
        let mut len = 0usize;
        for (idx, c) in self.coeffs.iter().enumerate() {
            while idx >= off[len + 1] {
                len += 1;
            }
            if c.is_zero() {
                continue;
            }
            let mut mask = 0u64;
            let mut value = idx - off[len];
            for _ in 0..len {
                mask |= 1 << (value % self.n);
                value /= self.n;
            }
            out.push((len, idx - off[len], mask, c));
        }
        out
    }

    /// Multiplicative inverse; the constant term must be `1`.
    pub fn inverse(&self) -> Self {
        assert!(self.coeffs[0].is_one(), "inverse requires constant term 1");
        // (1 + N)⁻¹ = Σ (−N)^t with N the augmentation part.
        let mut m = self.clone();
        m.coeffs[0] -= BigInt::one();
        for c in &mut m.coeffs {
            *c = -std::mem::take(c);
        }
        let mut acc = Self::one(self.n, self.max_deg, self.reduced);
        let mut term = Self::one(self.n, self.max_deg, self.reduced);
        for _ in 1..=self.max_deg {
            term = term.mul(&m);
            acc.add_assign(&term);
        }
        acc
    }

    /// Expansion of a word on generators `1 … n`.
    pub fn expand(w: &Word<usize>, n: usize, max_deg: usize, reduced: bool) -> Self {
        let mut acc = Self::one(n, max_deg, reduced);
        for (g, e) in w.letters() {
            acc = acc.mul(&Self::gen_power(n, max_deg, reduced, *g, *e));
        }
        acc
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let monos = self.monomials();
        if monos.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (seq, c) in monos {
            let neg = c < BigInt::zero();
            let mag = if neg { -c } else { c };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let vars: Vec<String> = seq.iter().map(|i| format!("X{i}")).collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join(" "))?;
            } else {
                write!(f, "{} {}", mag, vars.join(" "))?;
            }
        }
        Ok(())
    }
}

/// Whether `w` lies in the `q`-th lower central series term of the free
/// group on its generators (exactly, via the expansion below degree `q`).
pub fn in_lcs(w: &Word<usize>, q: usize) -> bool {
    if q <= 1 {
        return true;
    }
    let n = w.letters().iter().map(|(g, _)| *g).max().unwrap_or(1);
    TruncatedSeries::expand(w, n, q - 1, false).is_one()
}

// ---------------------------------------------------------------------------
// Invariant tables.
// ---------------------------------------------------------------------------

/// An index sequence, ordered by length first and lexicographically within a
/// length — the order in which indeterminacies are resolved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeqKey(pub Vec<usize>);

impl Ord for SeqKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.0.len(), &self.0).cmp(&(other.0.len(), &other.0))
    }
}

impl PartialOrd for SeqKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SeqKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&i| i <= 9) {
            for i in &self.0 {
                write!(f, "{i}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
            write!(f, "{}", parts.join("."))
        }
    }
}

/// One table entry: the stored value and its modulus (0 = exact).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MilnorEntry {
    pub value: BigInt,
    pub modulus: BigInt,
}

/// The table of longitude coefficients of a diagram up to a given sequence
/// length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MilnorTable {
    pub maxlen: usize,
    pub reduced: bool,
    pub entries: BTreeMap<SeqKey, MilnorEntry>,
}

/// A first point of disagreement between two tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Disagreement {
    pub key: SeqKey,
    pub left: MilnorEntry,
    pub right: MilnorEntry,
}

impl fmt::Display for Disagreement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} vs {} (mod {})",
            self.key,
            self.left.value,
            self.right.value,
            self.left.modulus.clone().max(self.right.modulus.clone())
        )
    }
}

impl MilnorTable {
    pub fn get(&self, key: &[usize]) -> Option<&MilnorEntry> {
        self.entries.get(&SeqKey(key.to_vec()))
    }

    /// Stored value of a key, if present.
    pub fn value(&self, key: &[usize]) -> Option<BigInt> {
        self.get(key).map(|e| e.value.clone())
    }

    /// Stored modulus of a key, if present.
    pub fn modulus(&self, key: &[usize]) -> Option<BigInt> {
        self.get(key).map(|e| e.modulus.clone())
    }

    /// The first key (in (length, lex) order) at which the two tables
    /// disagree modulo the larger of the two moduli, over the keys present
    /// in both.
    pub fn first_disagreement(&self, other: &Self) -> Option<Disagreement> {
        for (key, left) in &self.entries {
            let Some(right) = other.entries.get(key) else {
                continue;
            };
            let m = left.modulus.clone().max(right.modulus.clone());
            let delta = &left.value - &right.value;
            let agree = if m.is_zero() {
                delta.is_zero()
            } else {
                delta.mod_floor(&m).is_zero()
            };
            if !agree {
                return Some(Disagreement {
                    key: key.clone(),
                    left: left.clone(),
                    right: right.clone(),
                });
            }
        }
        None
    }

    pub fn agrees_with(&self, other: &Self) -> bool {
        self.first_disagreement(other).is_none()
    }
}

impl fmt::Display for MilnorTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (key, e) in &self.entries {
            if e.modulus.is_zero() {
                writeln!(f, "{} : {}", key, e.value)?;
            } else {
                writeln!(f, "{} : {} (mod {})", key, e.value, e.modulus)?;
            }
        }
        Ok(())
    }
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

/// Indeterminacy of `key` given the entries already stored: the gcd of the
/// values at every cyclic rotation of every subsequence (length ≥ 2)
/// obtained by deleting at least one index.
fn delta(entries: &BTreeMap<SeqKey, MilnorEntry>, key: &[usize]) -> BigInt {
    let k = key.len();
    let mut g = BigInt::zero();
    for mask in 0..(1u32 << k) {
        let kept = mask.count_ones() as usize;
        if kept == k || kept < 2 {
            continue;
        }
        let sub: Vec<usize> = (0..k)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| key[i])
            .collect();
        for s in 0..sub.len() {
            let mut rot = sub[s..].to_vec();
            rot.extend_from_slice(&sub[..s]);
            if let Some(e) = entries.get(&SeqKey(rot)) {
                g = g.gcd(&e.value);
            }
        }
    }
    g
}

/// Per-region expansions of the level-`q` reduction map (see [`crate::chen`]),
/// computed level by level directly on truncated series.
pub fn eta_series(
    d: &CutDiagram,
    net: &RoadNetwork,
    q: usize,
    max_deg: usize,
    reduced: bool,
) -> BTreeMap<RegionRef, TruncatedSeries> {
    let n = d.component_count();
    let mut cur: BTreeMap<RegionRef, TruncatedSeries> = d
        .regions()
        .map(|r| {
            (
                r,
                TruncatedSeries::generator(n, max_deg, reduced, r.component),
            )
        })
        .collect();
    for _level in 2..=q {
        let mut next = BTreeMap::new();
        for c in 1..=n {
            let gen = TruncatedSeries::generator(n, max_deg, reduced, c);
            // Full-turn series, needed only when some road on `c` winds.
            let winds = (0..d.region_count(c)).any(|j| net.winding(c, j) > 0);
            let (turn, turn_inv) = if winds {
                let mut t = TruncatedSeries::one(n, max_deg, reduced);
                for p in d.component(c) {
                    let f = &cur[&p.label];
                    t = t.mul(&match p.sign.as_i64() {
                        1 => f.clone(),
                        _ => f.inverse(),
                    });
                }
                let ti = t.inverse();
                (Some(t), Some(ti))
            } else {
                (None, None)
            };
            let mut pre = TruncatedSeries::one(n, max_deg, reduced);
            let mut pre_inv = TruncatedSeries::one(n, max_deg, reduced);
            for j in 0..d.region_count(c) {
                if j > 0 {
                    // Extend the canonical road across cut-point j.
                    let p = d.component(c)[j - 1];
                    let f = &cur[&p.label];
                    let (step, step_inv) = match p.sign.as_i64() {
                        1 => (f.clone(), f.inverse()),
                        _ => (f.inverse(), f.clone()),
                    };
                    pre = pre.mul(&step);
                    pre_inv = step_inv.mul(&pre_inv);
                }
                let r = RegionRef::new(c, j);
                let img = if j == 0 {
                    gen.clone()
                } else {
                    let w = net.winding(c, j);
                    let (mut v, mut v_inv) = (pre.clone(), pre_inv.clone());
                    for _ in 0..w {
                        v = turn.as_ref().unwrap().mul(&v);
                        v_inv = v_inv.mul(turn_inv.as_ref().unwrap());
                    }
                    v_inv.mul(&gen).mul(&v)
                };
                next.insert(r, img);
            }
        }
        cur = next;
    }
    cur
}

/// Expansions of the level-`maxlen` images of all longitudes, truncated
/// above degree `maxlen − 1` (everything the table of that length needs).
pub fn longitude_series(
    d: &CutDiagram,
    net: &RoadNetwork,
    maxlen: usize,
    reduced: bool,
) -> Vec<TruncatedSeries> {
    let n = d.component_count();
    let max_deg = maxlen.saturating_sub(1);
    let regions = eta_series(d, net, maxlen, max_deg, reduced);
    let mut out = Vec::with_capacity(n);
    for c in 1..=n {
        let corr = self_count(d, c, 1, d.component(c).len());
        let mut s = TruncatedSeries::gen_power(n, max_deg, reduced, c, -corr);
        for p in d.component(c) {
            let f = &regions[&p.label];
            s = s.mul(&match p.sign.as_i64() {
                1 => f.clone(),
                _ => f.inverse(),
            });
        }
        out.push(s);
    }
    out
}

/// Builds the invariant table of `d` for all index sequences of length 2
/// through `maxlen`, using a chosen road network.
pub fn milnor_table_with_network(
    d: &CutDiagram,
    net: &RoadNetwork,
    maxlen: usize,
    reduced: bool,
) -> MilnorTable {
    let n = d.component_count();
    let mut entries = BTreeMap::new();
    if n > 0 && maxlen >= 2 {
        let series = longitude_series(d, net, maxlen, reduced);
        for len in 2..=maxlen {
            for key in keys_of_length(n, len) {
                if reduced && has_repeat(&key) {
                    continue;
                }
                let j = *key.last().unwrap();
                let raw = series[j - 1].coefficient(&key[..len - 1]);
                let modulus = match d.skeleton.kind(j) {
                    ComponentKind::Circle => delta(&entries, &key),
                    ComponentKind::Interval => BigInt::zero(),
                };
                let value = if modulus.is_zero() {
                    raw
                } else {
                    raw.mod_floor(&modulus)
                };
                entries.insert(SeqKey(key), MilnorEntry { value, modulus });
            }
        }
    }
    MilnorTable {
        maxlen,
        reduced,
        entries,
    }
}

/// Invariant table with the canonical road network.
pub fn milnor_table(d: &CutDiagram, maxlen: usize, reduced: bool) -> MilnorTable {
    milnor_table_with_network(d, &RoadNetwork::canonical(d), maxlen, reduced)
}

/// Indeterminacy of one key of the (full) table of `d`.
pub fn indeterminacy(d: &CutDiagram, maxlen: usize, key: &[usize]) -> BigInt {
    let table = milnor_table(d, maxlen, false);
    delta(&table.entries, key)
}
