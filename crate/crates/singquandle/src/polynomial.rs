//! Canonical multivariate polynomials over a fixed variable set, and
//! multisets of polynomials rendered as formal `u`-exponent sums.
//!
//! Exponents are nonnegative integers, coefficients are integers, and the
//! variable set is closed: `s1, t1, s2, t2, s3, t3, t`. The only arithmetic
//! offered is additive merging; the structure polynomials and link invariants
//! built on top never need products.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

/// The fixed variable order. Term comparison and rendering both use it.
pub const VARS: [&str; 7] = ["s1", "t1", "s2", "t2", "s3", "t3", "t"];

/// Index of a variable in [`VARS`].
pub fn var_index(name: &str) -> Option<usize> {
    VARS.iter().position(|v| *v == name)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("malformed polynomial text at `{0}`")]
    Malformed(String),
}

/// A power product of the seven variables. Zero exponents are implicit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: [u32; 7],
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    /// Single variable to a power; `Monomial::var(6, 2)` is `t^2`.
    pub fn var(index: usize, exp: u32) -> Self {
        let mut m = Monomial::default();
        m.exps[index] = exp;
        m
    }

    /// The six-variable profile monomial `s1^a t1^b s2^c t2^d s3^e t3^f`.
    pub fn profile(exps: [u32; 6]) -> Self {
        let mut m = Monomial::default();
        m.exps[..6].copy_from_slice(&exps);
        m
    }

    /// Exponents for all seven variables in the fixed order.
    pub fn from_exponents(exps: [u32; 7]) -> Self {
        Monomial { exps }
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.exps[index]
    }

    pub fn total_degree(&self) -> u64 {
        self.exps.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Canonical term order: total degree descending, then exponent vector
    /// lexicographically descending under the fixed variable order.
    fn canonical_cmp(&self, other: &Self) -> std::cmp::Ordering {
        other
            .total_degree()
            .cmp(&self.total_degree())
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", VARS[i])?;
            } else {
                write!(f, "{}^{}", VARS[i], e)?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// A polynomial in canonical form: like terms merged, zero coefficients
/// dropped, terms sorted by the canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: Vec<(Monomial, i64)>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn constant(c: i64) -> Self {
        canonical_form([(Monomial::one(), c)])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, i64)] {
        &self.terms
    }

    pub fn coefficient(&self, m: &Monomial) -> i64 {
        self.terms
            .iter()
            .find(|(mono, _)| mono == m)
            .map_or(0, |&(_, c)| c)
    }

    /// Sum of two polynomials, re-canonicalized.
    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        canonical_form(self.terms.iter().chain(other.terms.iter()).copied())
    }

    /// Every coefficient multiplied by `k`.
    pub fn scale(&self, k: i64) -> MultiPoly {
        canonical_form(self.terms.iter().map(|&(m, c)| (m, c * k)))
    }
}

// Ordering on canonical polynomials, used only to key multisets
// deterministically. Compares the term lists under the monomial order.
impl PartialOrd for MultiPoly {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MultiPoly {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let mut a = self.terms.iter();
        let mut b = other.terms.iter();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return std::cmp::Ordering::Equal,
                (None, Some(_)) => return std::cmp::Ordering::Less,
                (Some(_), None) => return std::cmp::Ordering::Greater,
                (Some((ma, ca)), Some((mb, cb))) => {
                    let ord = ma.canonical_cmp(mb).then(ca.cmp(cb));
                    if ord != std::cmp::Ordering::Equal {
                        return ord;
                    }
                }
            }
        }
    }
}

/// Merge a raw term list into canonical form.
pub fn canonical_form(raw: impl IntoIterator<Item = (Monomial, i64)>) -> MultiPoly {
    let mut merged: BTreeMap<[u32; 7], i64> = BTreeMap::new();
    for (m, c) in raw {
        *merged.entry(m.exps).or_insert(0) += c;
    }
    let mut terms: Vec<(Monomial, i64)> = merged
        .into_iter()
        .filter(|&(_, c)| c != 0)
        .map(|(exps, c)| (Monomial { exps }, c))
        .collect();
    terms.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    MultiPoly { terms }
}

/// Deterministic text form, e.g. `2*t^8 + 2`. Coefficient 1 and exponent 1
/// are elided; the zero polynomial renders as `0`.
pub fn render(p: &MultiPoly) -> String {
    if p.terms.is_empty() {
        return "0".to_string();
    }
    let parts: Vec<String> = p
        .terms
        .iter()
        .map(|(m, c)| {
            if m.is_one() {
                format!("{c}")
            } else if *c == 1 {
                format!("{m}")
            } else if *c == -1 {
                format!("-{m}")
            } else {
                format!("{c}*{m}")
            }
        })
        .collect();
    parts.join(" + ")
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render(self))
    }
}

/// Parse text in the emitted grammar back into canonical form.
pub fn parse(text: &str) -> Result<MultiPoly, PolyError> {
    let text = text.trim();
    if text == "0" {
        return Ok(MultiPoly::zero());
    }
    let mut terms = Vec::new();
    for term in text.split(" + ") {
        let term = term.trim();
        if term.is_empty() {
            return Err(PolyError::Malformed(text.to_string()));
        }
        let mut coeff: i64 = 1;
        let mut mono = Monomial::one();
        let (sign, body) = match term.strip_prefix('-') {
            Some(rest) => (-1i64, rest),
            None => (1i64, term),
        };
        let mut saw_factor = false;
        for factor in body.split('*') {
            let factor = factor.trim();
            if factor.is_empty() {
                return Err(PolyError::Malformed(term.to_string()));
            }
            saw_factor = true;
            if let Ok(c) = factor.parse::<i64>() {
                coeff *= c;
                continue;
            }
            let (name, exp) = match factor.split_once('^') {
                Some((name, exp)) => {
                    let exp: u32 = exp
                        .parse()
                        .map_err(|_| PolyError::Malformed(factor.to_string()))?;
                    (name, exp)
                }
                None => (factor, 1),
            };
            let idx =
                var_index(name).ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
            mono.exps[idx] += exp;
        }
        if !saw_factor {
            return Err(PolyError::Malformed(term.to_string()));
        }
        terms.push((mono, sign * coeff));
    }
    Ok(canonical_form(terms))
}

/// A multiset of canonical polynomials with positive multiplicities: the
/// value of the coloring-indexed link invariants.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct InvariantMultiset {
    entries: BTreeMap<MultiPoly, u64>,
}

impl InvariantMultiset {
    pub fn new() -> Self {
        InvariantMultiset::default()
    }

    pub fn insert(&mut self, p: MultiPoly) {
        self.insert_with_multiplicity(p, 1);
    }

    pub fn insert_with_multiplicity(&mut self, p: MultiPoly, k: u64) {
        if k > 0 {
            *self.entries.entry(p).or_insert(0) += k;
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&MultiPoly, u64)> {
        self.entries.iter().map(|(p, &k)| (p, k))
    }

    pub fn multiplicity(&self, p: &MultiPoly) -> u64 {
        self.entries.get(p).copied().unwrap_or(0)
    }

    /// Total number of contributing colorings.
    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl FromIterator<MultiPoly> for InvariantMultiset {
    fn from_iter<I: IntoIterator<Item = MultiPoly>>(iter: I) -> Self {
        let mut m = InvariantMultiset::new();
        for p in iter {
            m.insert(p);
        }
        m
    }
}

/// Render a multiset in the `k*u^{P}` form, terms sorted by the rendered
/// exponent polynomial in descending lexicographic order.
pub fn render_multiset(m: &InvariantMultiset) -> String {
    if m.entries.is_empty() {
        return "0".to_string();
    }
    let mut parts: Vec<(String, u64)> = m.entries.iter().map(|(p, &k)| (render(p), k)).collect();
    parts.sort_by(|a, b| b.0.cmp(&a.0));
    parts
        .iter()
        .map(|(p, k)| format!("{k}*u^{{{p}}}"))
        .collect::<Vec<_>>()
        .join(" + ")
}

impl fmt::Display for InvariantMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_multiset(self))
    }
}
