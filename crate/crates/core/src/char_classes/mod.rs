//! Characteristic classes in the universal Chern ring.
//!
//! A bundle of rank `r` is modelled by its total Chern class
//! `1 + c_1 + ... + c_r` inside [`GradedPoly`]. Multiplicative classes are
//! computed from their one-variable series `Q(x)`: write
//! `log Q(x) = sum s_k x^k`, so the class is `exp(sum s_k p_k)` with `p_k` the
//! power sums of the Chern roots, which Newton's identities express in the
//! Chern classes.

mod derham;
mod identities;
pub mod roots;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::{factorial, rat, Rational};
use crate::bernoulli::BernoulliError;
use crate::graded_ring::{ExponentVector, GradedPoly, RingError};

pub use derham::{derham_chern_in_newton, derham_chern_lambda, derham_total_chern};
pub use identities::{
    recursion_structure_holds, todd24_c12sq_coefficient, todd_duality_sides, todd_c12sq_coefficient_at, verify_hirzebruch_coefficient,
    verify_todd_det_duality, DualityReport, HirzebruchReport, Td24Report, HIRZEBRUCH_DEFAULT_MAX_DEGREE,
    TD24_DEFAULT_TRUNCATION,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharClassError {
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("series must start with 1, found {0}")]
    NotNormalized(Rational),
    #[error("total Chern class must have constant term 1, found {0}")]
    NotTotalClass(Rational),
    #[error("{what} = {value} is out of range (allowed {allowed})")]
    OutOfRange { what: &'static str, value: u32, allowed: String },
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Bernoulli(#[from] BernoulliError),
}

/// A bundle of rank `r` seen through its Chern classes `c_1, ..., c_r`,
/// considered up to total weight `truncation`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BundleSpec {
    pub rank: u32,
    pub truncation: u32,
}

impl BundleSpec {
    pub fn new(rank: u32, truncation: u32) -> Result<Self, CharClassError> {
        if rank == 0 {
            return Err(CharClassError::ZeroRank);
        }
        Ok(BundleSpec { rank, truncation })
    }

    /// A bundle whose rank is at least the truncation, so no relation among
    /// `c_1, ..., c_N` is imposed.
    pub fn universal(truncation: u32) -> Self {
        BundleSpec { rank: truncation.max(1), truncation }
    }

    /// `1 + c_1 + ... + c_min(r, N)`.
    pub fn total_chern(&self) -> GradedPoly {
        let mut terms = vec![(ExponentVector::one(), Rational::one())];
        for i in 1..=self.rank.min(self.truncation) {
            terms.push((ExponentVector::var_pow(i, 1), Rational::one()));
        }
        GradedPoly::from_terms(self.truncation, terms)
    }
}

/// A multiplicative sequence, given by its series `Q(x) = 1 + q_1 x + ...`.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiplicativeSequence {
    pub name: String,
    coeffs: Vec<Rational>,
}

impl MultiplicativeSequence {
    pub fn new(name: impl Into<String>, coeffs: Vec<Rational>) -> Result<Self, CharClassError> {
        match coeffs.first() {
            Some(q0) if q0.is_one() => Ok(MultiplicativeSequence { name: name.into(), coeffs }),
            Some(q0) => Err(CharClassError::NotNormalized(q0.clone())),
            None => Err(CharClassError::NotNormalized(Rational::zero())),
        }
    }

    /// `x / (1 - e^{-x})` through `x^truncation`.
    pub fn todd(truncation: u32) -> Self {
        // (1 - e^{-x}) / x = sum (-1)^k x^k / (k+1)!
        let terms = (0..=truncation).map(|k| {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let q = Rational::new(BigInt::from(sign), BigInt::from(factorial(k as u64 + 1)));
            (ExponentVector::var_pow(1, k), q)
        });
        let denominator = GradedPoly::from_terms(truncation, terms);
        let series = denominator.invert_unit().expect("constant term is 1");
        let coeffs = series_coefficients(&series, truncation);
        MultiplicativeSequence { name: "todd".into(), coeffs }
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Degree through which the series is known.
    pub fn order(&self) -> u32 {
        self.coeffs.len() as u32 - 1
    }

    /// `Q` as a polynomial in `c_1`, truncated at `truncation`.
    pub fn as_series(&self, truncation: u32) -> GradedPoly {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, q)| (ExponentVector::var_pow(1, k as u32), q.clone()));
        GradedPoly::from_terms(truncation, terms)
    }

    /// Coefficients `s_0 = 0, s_1, ...` of `log Q(x)`.
    pub fn log_coefficients(&self, truncation: u32) -> Result<Vec<Rational>, CharClassError> {
        self.require_order(truncation)?;
        let log = self.as_series(truncation).log()?;
        Ok(series_coefficients(&log, truncation))
    }

    fn require_order(&self, truncation: u32) -> Result<(), CharClassError> {
        if truncation > self.order() {
            return Err(CharClassError::OutOfRange {
                what: "truncation",
                value: truncation,
                allowed: format!("at most the series order {}", self.order()),
            });
        }
        Ok(())
    }

    /// The class of a bundle with the given total Chern class.
    pub fn class_of_total(&self, total: &GradedPoly) -> Result<GradedPoly, CharClassError> {
        let n = total.truncation();
        let s = self.log_coefficients(n)?;
        let p = power_sums(total)?;
        let mut exponent = GradedPoly::zero(n);
        for k in 1..=n as usize {
            if !s[k].is_zero() {
                exponent = exponent.checked_add(&p[k].scale(&s[k]))?;
            }
        }
        Ok(exponent.exp()?)
    }

    pub fn class(&self, bundle: &BundleSpec) -> Result<GradedPoly, CharClassError> {
        self.class_of_total(&bundle.total_chern())
    }
}

fn series_coefficients(series: &GradedPoly, truncation: u32) -> Vec<Rational> {
    (0..=truncation)
        .map(|k| series.coefficient(&ExponentVector::var_pow(1, k)))
        .collect()
}

/// Power sums `p_0, ..., p_N` of the Chern roots of a total Chern class,
/// by `p_k = sum_{j<k} (-1)^{j-1} a_j p_{k-j} + (-1)^{k-1} k a_k`.
/// The entry `p_0` is left as zero; the rank is not visible from `total`.
pub fn power_sums(total: &GradedPoly) -> Result<Vec<GradedPoly>, CharClassError> {
    if !total.constant_term().is_one() {
        return Err(CharClassError::NotTotalClass(total.constant_term()));
    }
    let n = total.truncation();
    let a: Vec<GradedPoly> = (0..=n).map(|w| total.component(w)).collect::<Result<_, _>>()?;
    let mut p = vec![GradedPoly::zero(n)];
    for k in 1..=n as usize {
        let sign = |j: usize| if j % 2 == 1 { Rational::one() } else { -Rational::one() };
        let mut pk = a[k].scale(&(sign(k) * rat(k as i64)));
        for j in 1..k {
            if a[j].is_zero() || p[k - j].is_zero() {
                continue;
            }
            pk = pk.checked_add(&a[j].mul(&p[k - j])?.scale(&sign(j)))?;
        }
        p.push(pk);
    }
    Ok(p)
}

/// Elementary symmetric functions `e_0, ..., e_count` from power sums given
/// as polynomials, by `k e_k = sum_{j=1}^{k} (-1)^{j-1} e_{k-j} p_j`.
pub(crate) fn elementary_from_power_sums(p: &[GradedPoly], count: usize, truncation: u32) -> Result<Vec<GradedPoly>, RingError> {
    let mut e = vec![GradedPoly::one(truncation)];
    for k in 1..=count {
        let mut acc = GradedPoly::zero(truncation);
        for j in 1..=k {
            let term = e[k - j].mul(&p[j])?;
            acc = if j % 2 == 1 { acc.checked_add(&term)? } else { acc.checked_sub(&term)? };
        }
        e.push(acc.scale(&Rational::new(BigInt::one(), BigInt::from(k))));
    }
    Ok(e)
}

/// The Todd class of a bundle.
pub fn todd_class(bundle: &BundleSpec) -> Result<GradedPoly, CharClassError> {
    MultiplicativeSequence::todd(bundle.truncation).class(bundle)
}

/// The Todd class of any total Chern class.
pub fn todd_of_total_chern(total: &GradedPoly) -> Result<GradedPoly, CharClassError> {
    MultiplicativeSequence::todd(total.truncation()).class_of_total(total)
}

/// `rank + sum_{k>=1} p_k / k!`.
pub fn chern_character_of_total(total: &GradedPoly, rank: u32) -> Result<GradedPoly, CharClassError> {
    let n = total.truncation();
    let p = power_sums(total)?;
    let mut ch = GradedPoly::constant(n, rat(rank as i64));
    for (k, pk) in p.iter().enumerate().skip(1) {
        let inv = Rational::new(BigInt::one(), BigInt::from(factorial(k as u64)));
        ch = ch.checked_add(&pk.scale(&inv))?;
    }
    Ok(ch)
}

pub fn chern_character(bundle: &BundleSpec) -> Result<GradedPoly, CharClassError> {
    chern_character_of_total(&bundle.total_chern(), bundle.rank)
}

/// The power sum `N_k` in the Chern classes `λ_1, ..., λ_r` (with `λ_i = 0`
/// for `i > r`), at truncation `k`.
pub fn newton_from_chern(k: u32, rank: u32) -> Result<GradedPoly, CharClassError> {
    if k == 0 {
        return Err(CharClassError::OutOfRange { what: "k", value: 0, allowed: "k >= 1".into() });
    }
    let bundle = BundleSpec::new(rank, k)?;
    Ok(power_sums(&bundle.total_chern())?.swap_remove(k as usize))
}

/// The Chern class `λ_k` of a rank-`r` bundle as a polynomial in the power
/// sums `N_1, ..., N_k` (variable index `j` stands for `N_j`). Zero when
/// `k > r`.
pub fn chern_from_newton(k: u32, rank: u32) -> Result<GradedPoly, CharClassError> {
    if k == 0 {
        return Err(CharClassError::OutOfRange { what: "k", value: 0, allowed: "k >= 1".into() });
    }
    if rank == 0 {
        return Err(CharClassError::ZeroRank);
    }
    if k > rank {
        return Ok(GradedPoly::zero(k));
    }
    let p: Vec<GradedPoly> = (0..=k).map(|j| if j == 0 { GradedPoly::zero(k) } else { GradedPoly::var(k, j) }).collect();
    Ok(elementary_from_power_sums(&p, k as usize, k)?.swap_remove(k as usize))
}

/// Substitutes `N_j -> newton_from_chern(j, rank)` into a polynomial in
/// Newton-class variables.
pub fn newton_basis_to_chern(poly: &GradedPoly, rank: u32) -> Result<GradedPoly, CharClassError> {
    let n = poly.truncation();
    let mut images = BTreeMap::new();
    for j in 1..=poly.max_index() {
        images.insert(j, newton_from_chern(j, rank)?.with_truncation(n));
    }
    Ok(poly.substitute(&images, n)?)
}

#[cfg(test)]
mod tests;
