//! Freely reduced words in a free group.
//!
//! [`Word<G>`] is a word over formal generators of type `G`, stored
//! run-length encoded and kept freely reduced at all times: exponents are
//! nonzero and adjacent letters carry distinct generators.  The crate uses
//! `Word<RegionRef>` for words in regions of a diagram and `Word<usize>`
//! for words in the meridian generators `R_1, …, R_n`.

use std::fmt;

/// A freely reduced word; the identity is the empty word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word<G> {
    letters: Vec<(G, i64)>,
}

impl<G> Default for Word<G> {
    fn default() -> Self {
        Word {
            letters: Vec::new(),
        }
    }
}

impl<G: Clone + Eq> Word<G> {
    /// The empty (identity) word.
    pub fn one() -> Self {
        Word::default()
    }

    /// The word consisting of a single generator with the given exponent.
    pub fn generator(g: G, exp: i64) -> Self {
        let mut w = Word::one();
        w.push(g, exp);
        w
    }

    /// Appends `g^exp`, merging and cancelling with the tail as needed.
    pub fn push(&mut self, g: G, exp: i64) {
        if exp == 0 {
            return;
        }
        if let Some(last) = self.letters.last_mut() {
            if last.0 == g {
                last.1 += exp;
                if last.1 == 0 {
                    self.letters.pop();
                }
                return;
            }
        }
        self.letters.push((g, exp));
    }

    /// Builds a word from `(generator, exponent)` pairs, reducing as it goes.
    pub fn from_letters<I: IntoIterator<Item = (G, i64)>>(letters: I) -> Self {
        let mut w = Word::one();
        for (g, e) in letters {
            w.push(g, e);
        }
        w
    }

    /// `self · other`.
    pub fn mul(&self, other: &Word<G>) -> Word<G> {
        let mut w = self.clone();
        for (g, e) in &other.letters {
            w.push(g.clone(), *e);
        }
        w
    }

    /// `self^{-1}`.
    pub fn inverse(&self) -> Word<G> {
        Word {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|(g, e)| (g.clone(), -e))
                .collect(),
        }
    }

    /// `by^{-1} · self · by`.
    pub fn conjugated_by(&self, by: &Word<G>) -> Word<G> {
        by.inverse().mul(self).mul(by)
    }

    /// The commutator `[self, other] = self^{-1} · other^{-1} · self · other`.
    pub fn commutator(&self, other: &Word<G>) -> Word<G> {
        self.inverse().mul(&other.inverse()).mul(self).mul(other)
    }

    /// `self^n` (n may be negative).
    pub fn pow(&self, n: i64) -> Word<G> {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut w = Word::one();
        for _ in 0..n.unsigned_abs() {
            w = w.mul(&base);
        }
        w
    }

    /// True for the identity.
    pub fn is_one(&self) -> bool {
        self.letters.is_empty()
    }

    /// Run-length encoded letters `(generator, nonzero exponent)`.
    pub fn letters(&self) -> &[(G, i64)] {
        &self.letters
    }

    /// Word length counting multiplicity (sum of |exponents|).
    pub fn len(&self) -> usize {
        self.letters
            .iter()
            .map(|(_, e)| e.unsigned_abs() as usize)
            .sum()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Sum of exponents of the letters selected by `pred`.
    pub fn exponent_sum_where<F: Fn(&G) -> bool>(&self, pred: F) -> i64 {
        self.letters
            .iter()
            .filter(|(g, _)| pred(g))
            .map(|(_, e)| e)
            .sum()
    }

    /// Applies a homomorphism determined by its values on generators.
    pub fn map<H: Clone + Eq, F: Fn(&G) -> Word<H>>(&self, f: F) -> Word<H> {
        let mut out = Word::one();
        for (g, e) in &self.letters {
            let image = f(g);
            let piece = image.pow(*e);
            out = out.mul(&piece);
        }
        out
    }
}

impl<G: fmt::Display> Word<G> {
    /// Formats with a generator prefix, e.g. `fmt_with("R")` for meridians.
    pub fn fmt_with(&self, prefix: &str) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (g, e) in &self.letters {
            if *e == 1 {
                parts.push(format!("{prefix}{g}"));
            } else {
                parts.push(format!("{prefix}{g}^{e}"));
            }
        }
        parts.join(" ")
    }
}

impl<G: fmt::Display> fmt::Display for Word<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with(""))
    }
}
