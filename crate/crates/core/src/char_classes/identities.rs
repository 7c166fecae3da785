//! Executable checks of the formal identities behind the vanishing of the
//! de Rham Chern classes.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{todd_class, BundleSpec, CharClassError};
use crate::arith::{factorial, Rational};
use crate::bernoulli::bernoulli;
use crate::graded_ring::{ExponentVector, GradedPoly};

/// Largest `2i` accepted by [`verify_hirzebruch_coefficient`] by default.
pub const HIRZEBRUCH_DEFAULT_MAX_DEGREE: u32 = 16;

/// Truncation used for the `c_12^2` coefficient of `Td_24`.
pub const TD24_DEFAULT_TRUNCATION: u32 = 26;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualityReport {
    pub rank: u32,
    pub truncation: u32,
    pub equal: bool,
    /// Lowest weight at which the two sides differ.
    pub first_difference: Option<u32>,
}

/// Compares `Td(E)` with `ch(det E) · Td(E^∨)` in the universal ring on
/// `λ_1, ..., λ_r`. Here `ch(det E) = exp(c_1)`, and `Td(E^∨)` is `Td(E)`
/// under `c_i -> (-1)^i c_i`.
pub fn verify_todd_det_duality(rank: u32, truncation: u32) -> Result<DualityReport, CharClassError> {
    let bundle = BundleSpec::new(rank, truncation)?;
    let (lhs, rhs) = todd_duality_sides(&bundle)?;
    let first_difference = (0..=truncation).find(|&w| lhs.component(w).ok() != rhs.component(w).ok());
    Ok(DualityReport { rank, truncation, equal: first_difference.is_none(), first_difference })
}

/// Both sides of the duality, exposed for oracle comparison.
pub fn todd_duality_sides(bundle: &BundleSpec) -> Result<(GradedPoly, GradedPoly), CharClassError> {
    let n = bundle.truncation;
    let td = todd_class(bundle)?;
    let det = GradedPoly::var(n, 1).exp()?;
    let rhs = det.mul(&td.sign_involution())?;
    Ok((td, rhs))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HirzebruchReport {
    pub i: u32,
    /// Coefficient of `c_{2i}` in `Td_{2i}`.
    #[serde(with = "crate::arith::rational_string")]
    pub top_coefficient: Rational,
    /// Coefficient of `c_1^{2i}` in `Td_{2i}`.
    #[serde(with = "crate::arith::rational_string")]
    pub c1_power_coefficient: Rational,
    /// `B_{2i} / (2i)!` with signed Bernoulli numbers.
    #[serde(with = "crate::arith::rational_string")]
    pub expected: Rational,
    pub holds: bool,
}

/// Checks that the `c_{2i}` and `c_1^{2i}` coefficients of `Td_{2i}` agree,
/// equal `B_{2i}/(2i)!`, and are nonzero.
pub fn verify_hirzebruch_coefficient(i: u32, max_degree: u32) -> Result<HirzebruchReport, CharClassError> {
    if i == 0 || 2 * i > max_degree {
        return Err(CharClassError::OutOfRange { what: "i", value: i, allowed: format!("1..={}", max_degree / 2) });
    }
    let n = 2 * i;
    let td = todd_class(&BundleSpec::universal(n))?;
    let top_coefficient = td.coefficient(&ExponentVector::var_pow(n, 1));
    let c1_power_coefficient = td.coefficient(&ExponentVector::var_pow(1, n));
    let expected = bernoulli(n as usize)? / Rational::from_integer(BigInt::from(factorial(n as u64)));
    let holds = top_coefficient == c1_power_coefficient && top_coefficient == expected && !expected.is_zero();
    Ok(HirzebruchReport { i, top_coefficient, c1_power_coefficient, expected, holds })
}

/// Whether every monomial of `Td_{2i}` other than `c_{2i}` contains some
/// `c_j` with `j <= i`.
pub fn recursion_structure_holds(i: u32) -> Result<bool, CharClassError> {
    let n = 2 * i;
    let td = todd_class(&BundleSpec::universal(n))?.component(n)?;
    let top = ExponentVector::var_pow(n, 1);
    let holds = td
        .terms()
        .filter(|(m, _)| **m != top)
        .all(|(m, _)| m.iter().any(|(j, _)| j <= i));
    Ok(holds)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Td24Report {
    pub truncation: u32,
    #[serde(with = "crate::arith::rational_string")]
    pub coefficient: Rational,
    pub nonzero: bool,
}

/// The coefficient of `c_12^2` in `Td_24`, computed in the universal ring
/// truncated at `truncation >= 24`.
pub fn todd_c12sq_coefficient_at(truncation: u32) -> Result<Td24Report, CharClassError> {
    if truncation < 24 {
        return Err(CharClassError::OutOfRange { what: "truncation", value: truncation, allowed: ">= 24".into() });
    }
    let td = todd_class(&BundleSpec::universal(truncation))?;
    let coefficient = td.coefficient(&ExponentVector::var_pow(12, 2));
    Ok(Td24Report { truncation, nonzero: !coefficient.is_zero(), coefficient })
}

pub fn todd24_c12sq_coefficient() -> Result<Td24Report, CharClassError> {
    todd_c12sq_coefficient_at(TD24_DEFAULT_TRUNCATION)
}
