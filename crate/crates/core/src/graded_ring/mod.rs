//! Truncated graded polynomial algebra `Q[c_1, c_2, ...]` with
//! `weight(c_i) = i`.
//!
//! Every [`GradedPoly`] carries its own truncation `N`: monomials of total
//! weight above `N` are never stored. Because each variable has weight at
//! least one, every element without constant term is nilpotent, which is what
//! makes `exp`, `log` and unit inversion finite computations.

mod series;
mod text;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::arith::Rational;

pub use text::{format_rational, parse_monomial, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("truncation mismatch: {left} vs {right}")]
    TruncationMismatch { left: u32, right: u32 },
    #[error("weight {weight} exceeds truncation {truncation}")]
    WeightAboveTruncation { weight: u32, truncation: u32 },
    #[error("constant term is zero; element is not a unit")]
    NotUnit,
    #[error("exp needs a vanishing constant term, found {0}")]
    ExpDomain(Rational),
    #[error("log needs constant term 1, found {0}")]
    LogDomain(Rational),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Finitely supported exponent vector over the variables `c_1, c_2, ...`.
///
/// Stored densely (`exps[i - 1]` is the exponent of `c_i`) with trailing zeros
/// trimmed, so equal monomials have equal representations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExponentVector {
    exps: Vec<u16>,
    weight: u32,
}

impl ExponentVector {
    pub fn one() -> Self {
        ExponentVector { exps: Vec::new(), weight: 0 }
    }

    /// The monomial `c_index^exp`.
    pub fn var_pow(index: u32, exp: u32) -> Self {
        Self::from_pairs(&[(index, exp)])
    }

    /// Builds from `(index, exponent)` pairs; repeated indices accumulate.
    pub fn from_pairs(pairs: &[(u32, u32)]) -> Self {
        let len = pairs.iter().filter(|(_, e)| *e > 0).map(|(i, _)| *i).max().unwrap_or(0);
        let mut exps = vec![0u16; len as usize];
        for &(i, e) in pairs {
            assert!(i >= 1, "variable indices start at 1");
            if e > 0 {
                exps[(i - 1) as usize] += e as u16;
            }
        }
        Self::from_dense(exps)
    }

    fn from_dense(mut exps: Vec<u16>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        let weight = exps.iter().enumerate().map(|(i, &e)| (i as u32 + 1) * e as u32).sum();
        ExponentVector { exps, weight }
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponent(&self, index: u32) -> u32 {
        index
            .checked_sub(1)
            .and_then(|i| self.exps.get(i as usize))
            .copied()
            .unwrap_or(0) as u32
    }

    /// Largest variable index present, 0 for the unit monomial.
    pub fn max_index(&self) -> u32 {
        self.exps.len() as u32
    }

    /// `(index, exponent)` pairs with nonzero exponent, ascending index.
    pub fn iter(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (i as u32 + 1, e as u32))
    }

    /// Number of variable factors counted with multiplicity.
    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &ExponentVector) -> ExponentVector {
        let (long, short) = if self.exps.len() >= other.exps.len() { (self, other) } else { (other, self) };
        let mut exps = long.exps.clone();
        for (slot, e) in exps.iter_mut().zip(&short.exps) {
            *slot += e;
        }
        ExponentVector { exps, weight: self.weight + other.weight }
    }
}

impl Ord for ExponentVector {
    /// Ascending total weight; within one weight, larger powers of
    /// lower-index variables come first (`c1^2` before `c2`).
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight.cmp(&other.weight).then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

type Terms = BTreeMap<ExponentVector, Rational>;
type Component = Vec<(ExponentVector, Rational)>;

/// Sparse polynomial in the weighted variables `c_i`, truncated at a total
/// weight bound.
#[derive(Debug, Clone)]
pub struct GradedPoly {
    truncation: u32,
    terms: Terms,
}

impl GradedPoly {
    pub fn zero(truncation: u32) -> Self {
        GradedPoly { truncation, terms: Terms::new() }
    }

    pub fn one(truncation: u32) -> Self {
        Self::constant(truncation, Rational::one())
    }

    pub fn constant(truncation: u32, q: Rational) -> Self {
        Self::monomial(truncation, ExponentVector::one(), q)
    }

    /// The variable `c_index`; zero when its weight exceeds the truncation.
    pub fn var(truncation: u32, index: u32) -> Self {
        Self::monomial(truncation, ExponentVector::var_pow(index, 1), Rational::one())
    }

    pub fn monomial(truncation: u32, m: ExponentVector, q: Rational) -> Self {
        Self::from_terms(truncation, [(m, q)])
    }

    /// Collects terms, summing duplicates and dropping zero coefficients
    /// and anything above the truncation.
    pub fn from_terms(truncation: u32, terms: impl IntoIterator<Item = (ExponentVector, Rational)>) -> Self {
        let mut out = Terms::new();
        for (m, q) in terms {
            if m.weight() > truncation {
                continue;
            }
            *out.entry(m).or_insert_with(Rational::zero) += q;
        }
        out.retain(|_, q| !q.is_zero());
        GradedPoly { truncation, terms: out }
    }

    fn from_map(truncation: u32, map: HashMap<ExponentVector, Rational>) -> Self {
        let terms = map
            .into_iter()
            .filter(|(m, q)| !q.is_zero() && m.weight() <= truncation)
            .collect();
        GradedPoly { truncation, terms }
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&ExponentVector::one())
    }

    /// Exact coefficient of `m`; zero when absent.
    pub fn coefficient(&self, m: &ExponentVector) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Largest weight carrying a nonzero term, `None` for zero.
    pub fn max_weight(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.weight())
    }

    /// Largest variable index appearing in any term.
    pub fn max_index(&self) -> u32 {
        self.terms.keys().map(|m| m.max_index()).max().unwrap_or(0)
    }

    /// The weight-`w` homogeneous part, keeping this truncation.
    pub fn component(&self, w: u32) -> Result<GradedPoly, RingError> {
        if w > self.truncation {
            return Err(RingError::WeightAboveTruncation { weight: w, truncation: self.truncation });
        }
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.weight() == w)
            .map(|(m, q)| (m.clone(), q.clone()))
            .collect();
        Ok(GradedPoly { truncation: self.truncation, terms })
    }

    /// Drops everything above the new, smaller bound.
    pub fn truncate(&self, n: u32) -> GradedPoly {
        let n = n.min(self.truncation);
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.weight() <= n)
            .map(|(m, q)| (m.clone(), q.clone()))
            .collect();
        GradedPoly { truncation: n, terms }
    }

    /// Reinterprets the stored terms under a different truncation. Raising
    /// the bound is only meaningful when the value is known to be an exact
    /// polynomial of weight at most the old bound.
    pub fn with_truncation(&self, n: u32) -> GradedPoly {
        if n <= self.truncation {
            self.truncate(n)
        } else {
            GradedPoly { truncation: n, terms: self.terms.clone() }
        }
    }

    fn check(&self, other: &GradedPoly) -> Result<(), RingError> {
        if self.truncation != other.truncation {
            return Err(RingError::TruncationMismatch { left: self.truncation, right: other.truncation });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &GradedPoly) -> Result<GradedPoly, RingError> {
        self.check(other)?;
        let mut terms = self.terms.clone();
        for (m, q) in &other.terms {
            *terms.entry(m.clone()).or_insert_with(Rational::zero) += q;
        }
        terms.retain(|_, q| !q.is_zero());
        Ok(GradedPoly { truncation: self.truncation, terms })
    }

    pub fn checked_sub(&self, other: &GradedPoly) -> Result<GradedPoly, RingError> {
        self.checked_add(&other.neg_ref())
    }

    /// The truncated ring product.
    pub fn mul(&self, other: &GradedPoly) -> Result<GradedPoly, RingError> {
        self.check(other)?;
        let n = self.truncation;
        let a = self.components();
        let b = other.components();
        let mut acc = HashMap::new();
        for (wa, ca) in a.iter().enumerate() {
            for cb in b.iter().take((n as usize + 1).saturating_sub(wa)) {
                accumulate_product(&mut acc, ca, cb, None);
            }
        }
        Ok(Self::from_map(n, acc))
    }

    pub fn scale(&self, q: &Rational) -> GradedPoly {
        if q.is_zero() {
            return GradedPoly::zero(self.truncation);
        }
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), c * q)).collect();
        GradedPoly { truncation: self.truncation, terms }
    }

    fn neg_ref(&self) -> GradedPoly {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        GradedPoly { truncation: self.truncation, terms }
    }

    pub fn pow(&self, e: u32) -> Result<GradedPoly, RingError> {
        let mut acc = GradedPoly::one(self.truncation);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `c_i -> (-1)^i c_i`, i.e. every monomial is scaled by the sign of its
    /// total weight. This is the Chern class rule for the dual bundle.
    pub fn sign_involution(&self) -> GradedPoly {
        let terms = self
            .terms
            .iter()
            .map(|(m, q)| (m.clone(), if m.weight() % 2 == 1 { -q } else { q.clone() }))
            .collect();
        GradedPoly { truncation: self.truncation, terms }
    }

    /// Ring homomorphism sending `c_i` to `images[i]` (variables without an
    /// image are kept). Every image must share the target truncation.
    pub fn substitute(&self, images: &BTreeMap<u32, GradedPoly>, truncation: u32) -> Result<GradedPoly, RingError> {
        for img in images.values() {
            if img.truncation != truncation {
                return Err(RingError::TruncationMismatch { left: truncation, right: img.truncation });
            }
        }
        let mut powers: HashMap<(u32, u32), GradedPoly> = HashMap::new();
        let mut out = GradedPoly::zero(truncation);
        for (m, q) in &self.terms {
            let mut term = GradedPoly::constant(truncation, q.clone());
            for (i, e) in m.iter() {
                let factor = match powers.get(&(i, e)) {
                    Some(p) => p.clone(),
                    None => {
                        let base = images.get(&i).cloned().unwrap_or_else(|| GradedPoly::var(truncation, i));
                        let p = base.pow(e)?;
                        powers.insert((i, e), p.clone());
                        p
                    }
                };
                term = term.mul(&factor)?;
                if term.is_zero() {
                    break;
                }
            }
            out = out.checked_add(&term)?;
        }
        Ok(out)
    }

    /// Homogeneous components indexed by weight `0..=N`.
    pub(crate) fn components(&self) -> Vec<Component> {
        let mut out = vec![Vec::new(); self.truncation as usize + 1];
        for (m, q) in &self.terms {
            out[m.weight() as usize].push((m.clone(), q.clone()));
        }
        out
    }

    pub(crate) fn from_components(truncation: u32, comps: Vec<Component>) -> Self {
        Self::from_terms(truncation, comps.into_iter().flatten())
    }
}

/// `acc += scale * a * b` over two lists of terms.
pub(crate) fn accumulate_product(
    acc: &mut HashMap<ExponentVector, Rational>,
    a: &[(ExponentVector, Rational)],
    b: &[(ExponentVector, Rational)],
    scale: Option<&Rational>,
) {
    for (ma, qa) in a {
        let qa = match scale {
            Some(s) => qa * s,
            None => qa.clone(),
        };
        for (mb, qb) in b {
            *acc.entry(ma.mul(mb)).or_insert_with(Rational::zero) += &qa * qb;
        }
    }
}

/// Equality after dropping terms above the smaller truncation.
impl PartialEq for GradedPoly {
    fn eq(&self, other: &Self) -> bool {
        let n = self.truncation.min(other.truncation);
        let a = self.terms.iter().filter(|(m, _)| m.weight() <= n);
        let b = other.terms.iter().filter(|(m, _)| m.weight() <= n);
        a.eq(b)
    }
}

impl Add for &GradedPoly {
    type Output = GradedPoly;
    fn add(self, rhs: &GradedPoly) -> GradedPoly {
        self.checked_add(rhs).expect("truncation mismatch in +")
    }
}

impl Sub for &GradedPoly {
    type Output = GradedPoly;
    fn sub(self, rhs: &GradedPoly) -> GradedPoly {
        self.checked_sub(rhs).expect("truncation mismatch in -")
    }
}

impl Mul for &GradedPoly {
    type Output = GradedPoly;
    fn mul(self, rhs: &GradedPoly) -> GradedPoly {
        GradedPoly::mul(self, rhs).expect("truncation mismatch in *")
    }
}

impl Neg for &GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        self.neg_ref()
    }
}

impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text("c"))
    }
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    truncation: u32,
    poly: String,
}

impl Serialize for GradedPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyRepr { truncation: self.truncation, poly: self.to_text("c") }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GradedPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(d)?;
        GradedPoly::parse(&repr.poly, repr.truncation).map_err(serde::de::Error::custom)
    }
}
