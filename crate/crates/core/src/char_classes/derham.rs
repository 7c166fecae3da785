//! Chern classes of the de Rham bundle `H` of a `g`-dimensional abelian
//! scheme whose Hodge bundle is self-dual up to isomorphism, so that
//! `c(H) = c(E) · c(E^∨)` with `E` of rank `g`.

use super::{elementary_from_power_sums, BundleSpec, CharClassError};
use crate::graded_ring::GradedPoly;

fn check_genus(g: u32) -> Result<(), CharClassError> {
    if g == 0 {
        return Err(CharClassError::ZeroRank);
    }
    Ok(())
}

/// `(1 + λ_1 + ... + λ_g)(1 - λ_1 + λ_2 - ... + (-1)^g λ_g)` up to weight `truncation`.
pub fn derham_total_chern(g: u32, truncation: u32) -> Result<GradedPoly, CharClassError> {
    check_genus(g)?;
    let c = BundleSpec::new(g, truncation)?.total_chern();
    Ok(c.mul(&c.sign_involution())?)
}

/// `c_{2i}(H)` in the Hodge classes `λ_j` (variable index `j`).
pub fn derham_chern_lambda(i: u32, g: u32) -> Result<GradedPoly, CharClassError> {
    check_i(i, g)?;
    Ok(derham_total_chern(g, 2 * i)?.component(2 * i)?)
}

fn check_i(i: u32, g: u32) -> Result<(), CharClassError> {
    check_genus(g)?;
    if i == 0 || i > g {
        return Err(CharClassError::OutOfRange { what: "i", value: i, allowed: format!("1..={g}") });
    }
    Ok(())
}

/// `c_{2i}(H)` as a polynomial in the even Newton classes `N_{2j}(E)`
/// (variable index `2j`).
///
/// `c(H) = prod_j (1 - x_j^2)`, so `c_{2i}(H) = (-1)^i e_i(x_1^2, ..., x_g^2)`,
/// and the power sums of the squared roots are `N_{2j}`.
pub fn derham_chern_in_newton(i: u32, g: u32) -> Result<GradedPoly, CharClassError> {
    check_i(i, g)?;
    let n = 2 * i;
    let squared_power_sums: Vec<GradedPoly> = (0..=i)
        .map(|j| if j == 0 { GradedPoly::zero(n) } else { GradedPoly::var(n, 2 * j) })
        .collect();
    let e = elementary_from_power_sums(&squared_power_sums, i as usize, n)?;
    let ei = &e[i as usize];
    Ok(if i % 2 == 0 { ei.clone() } else { -ei })
}
