//! Upper bounds on the torsion orders of the de Rham Chern classes
//! `c_{2i}(H)`, prime by prime.
//!
//! Four mechanisms are evaluated independently:
//!
//! * the Todd relation with coefficients in `Z[1/(2g+d+1)!]`, which bounds
//!   `v_ℓ` for `ℓ > 2g + d + 1` by the Bernoulli valuations of
//!   [`bernoulli_set`];
//! * in characteristic `p`, the relation `(p^{2i} - 1) c_{2i}(H) = 0`;
//! * for the top class, the divisor `(g - 1)! n_g`, together with the
//!   cohomological order candidates `n_i`, `n_i / 2`;
//! * in characteristic 0, the numerator bound `v_ℓ(num((2^{2i} - 1) B_{2i}))`
//!   for `ℓ > 2i`, which concerns `N_{2i}(E)`.
//!
//! Everything is stated as "`v_ℓ(order) <= e`"; no exact orders are claimed.

mod ledger;
pub mod reference;

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{
    abs_numerator, factor, factor_partial, factorial, int_valuation, is_prime, multiplicative_order, valuation,
    ArithError, FactorLimits, FactoredInt, PartialFactorization, Rational, Valuation,
};
use crate::bernoulli::{bernoulli, nk_formula, BernoulliError};

pub use ledger::{
    build_ledger, build_ledger_with, BoundEntry, EvdgColumn, FzipColumn, Ledger, Mechanism, MrBound, Note,
    PrimeBound, Unfactored, reconstruct_annihilator,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("invalid context: {0}")]
    InvalidContext(String),
    #[error("the Todd estimate only applies for primes above 2g + d + 1 = {threshold}, got {ell}")]
    BelowThreshold { ell: BigUint, threshold: u64 },
    #[error("the numerator bound for i = {i} only applies for primes above {}, got {ell}", 2 * .i)]
    BelowTwoI { ell: BigUint, i: u32 },
    #[error("class index i = {i} outside 1..={g}")]
    IndexOutOfRange { i: u32, g: u32 },
    #[error("class index must be at least 1")]
    ZeroIndex,
    #[error("no characteristic set in the context")]
    NoCharacteristic,
    #[error("the prime {0} equals the characteristic")]
    EllIsCharacteristic(BigUint),
    #[error("{0} is not prime")]
    NotPrime(BigUint),
    #[error("negative valuation {value} of B_{index} at {ell}")]
    NegativeValuation { ell: BigUint, index: u32, value: i64 },
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Bernoulli(#[from] BernoulliError),
}

/// Numerical data of an abelian scheme `X / S`: relative dimension `g`,
/// base dimension `d`, and optionally the characteristic and a level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Context {
    pub g: u32,
    pub d: u64,
    /// `2g + d + 1`.
    pub threshold: u64,
    pub char_p: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level_n: Option<u64>,
}

impl Context {
    /// With a level and no `d`, `d` defaults to `g(g+1)/2`, the dimension of
    /// the moduli space of principally polarized abelian varieties.
    pub fn new(g: u32, d: Option<u64>, char_p: Option<u64>, level_n: Option<u64>) -> Result<Self, BoundsError> {
        if g == 0 {
            return Err(BoundsError::InvalidContext("g must be at least 1".into()));
        }
        if let Some(n) = level_n {
            if n < 3 {
                return Err(BoundsError::InvalidContext(format!("level {n} must be at least 3")));
            }
        }
        let d = match (d, level_n) {
            (Some(d), _) => d,
            (None, Some(_)) => g as u64 * (g as u64 + 1) / 2,
            (None, None) => return Err(BoundsError::InvalidContext("either d or a level must be given".into())),
        };
        if let Some(p) = char_p {
            if !is_prime(&BigUint::from(p)) {
                return Err(BoundsError::InvalidContext(format!("characteristic {p} is not prime")));
            }
            if let Some(n) = level_n {
                if n % p == 0 {
                    return Err(BoundsError::InvalidContext(format!("characteristic {p} divides the level {n}")));
                }
            }
        }
        Ok(Context { g, d, threshold: 2 * g as u64 + d + 1, char_p, level_n })
    }

    fn check_index(&self, i: u32) -> Result<(), BoundsError> {
        if i == 0 || i > self.g {
            return Err(BoundsError::IndexOutOfRange { i, g: self.g });
        }
        Ok(())
    }
}

/// The Bernoulli indices `{2, 4, ..., 2⌊i/2⌋, 2i}` governing `c_{2i}(H)`.
pub fn bernoulli_set(i: u32) -> Vec<u32> {
    let mut set: Vec<u32> = (1..=i / 2).map(|j| 2 * j).collect();
    if i > 0 && set.last() != Some(&(2 * i)) {
        set.push(2 * i);
    }
    set
}

fn require_prime(ell: &BigUint) -> Result<(), BoundsError> {
    if !is_prime(ell) {
        return Err(BoundsError::NotPrime(ell.clone()));
    }
    Ok(())
}

/// `max_{n ∈ bernoulli_set(i)} v_ℓ(B_n)` for a prime `ℓ > 2g + d + 1`.
pub fn lambda_todd_bound(ctx: &Context, i: u32, ell: &BigUint) -> Result<u32, BoundsError> {
    ctx.check_index(i)?;
    require_prime(ell)?;
    if *ell <= BigUint::from(ctx.threshold) {
        return Err(BoundsError::BelowThreshold { ell: ell.clone(), threshold: ctx.threshold });
    }
    let mut best = 0u32;
    for n in bernoulli_set(i) {
        match valuation(&bernoulli(n as usize)?, ell)? {
            Valuation::Finite(v) if v < 0 => {
                return Err(BoundsError::NegativeValuation { ell: ell.clone(), index: n, value: v })
            }
            Valuation::Finite(v) => best = best.max(v as u32),
            Valuation::Infinite => unreachable!("even Bernoulli numbers are nonzero"),
        }
    }
    Ok(best)
}

fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n % d == 0).collect()
}

fn mobius(n: u32) -> i32 {
    let mut n = n;
    let mut sign = 1;
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            n /= q;
            if n % q == 0 {
                return 0;
            }
            sign = -sign;
        }
        q += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// `Φ_e(p)` from `prod_{f | e} (p^f - 1)^{μ(e/f)}`.
fn cyclotomic_value(p: &BigUint, e: u32) -> BigUint {
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for f in divisors(e) {
        let term = p.pow(f) - 1u32;
        match mobius(e / f) {
            1 => num *= term,
            -1 => den *= term,
            _ => {}
        }
    }
    num / den
}

/// `p^{2i} - 1`, factored piece by piece through `p^{2i} - 1 = prod_{e | 2i} Φ_e(p)`.
pub fn fzip_factorization(p: &BigUint, i: u32, limits: FactorLimits) -> Result<PartialFactorization, BoundsError> {
    if i == 0 {
        return Err(BoundsError::ZeroIndex);
    }
    require_prime(p)?;
    let mut primes = FactoredInt::one();
    let mut composites = Vec::new();
    for e in divisors(2 * i) {
        let part = factor_partial(&cyclotomic_value(p, e), limits)?;
        primes = primes.mul(&part.primes);
        composites.extend(part.composites);
    }
    composites.sort();
    Ok(PartialFactorization { primes, composites })
}

/// `p^{2i} - 1` completely factored, or an effort error.
pub fn fzip_bound(p: &BigUint, i: u32) -> Result<FactoredInt, BoundsError> {
    let part = fzip_factorization(p, i, FactorLimits::default())?;
    if part.is_complete() {
        Ok(part.primes)
    } else {
        Err(ArithError::EffortExceeded { partial: part.primes, composites: part.composites }.into())
    }
}

/// `q` can divide the order of `c_{2i}(H)` in characteristic `p` only when
/// the multiplicative order of `p` mod `q` divides `2i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderCondition {
    pub p: u64,
    #[serde(with = "crate::arith::biguint_string")]
    pub q: BigUint,
    #[serde(with = "crate::arith::biguint_string")]
    pub order: BigUint,
    pub two_i: u32,
    /// `gcd(2i, q - 1)`; the order divides `2i` iff it divides this.
    pub gcd: u64,
    pub divides: bool,
}

pub fn order_condition(p: u64, q: &BigUint, i: u32) -> Result<OrderCondition, BoundsError> {
    let order = multiplicative_order(&BigInt::from(p), q)?;
    let two_i = 2 * i;
    let q_minus_one = q - 1u32;
    let gcd = BigUint::from(two_i).gcd(&q_minus_one).to_u64().expect("divides 2i");
    let divides = (BigUint::from(two_i) % &order).is_zero();
    Ok(OrderCondition { p, q: q.clone(), order, two_i, gcd, divides })
}

/// The characteristic-`p` bound at one prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharPBound {
    pub lambda_todd: u32,
    /// `v_ℓ(p^{2i} - 1)`.
    pub fzip: u32,
    pub bound: u32,
    pub condition: OrderCondition,
}

/// `min(v_ℓ(p^{2i} - 1), lambda_todd_bound)` for `ℓ ≠ p`.
pub fn combined_char_p_bound(ctx: &Context, i: u32, ell: &BigUint) -> Result<CharPBound, BoundsError> {
    let p = ctx.char_p.ok_or(BoundsError::NoCharacteristic)?;
    if *ell == BigUint::from(p) {
        return Err(BoundsError::EllIsCharacteristic(ell.clone()));
    }
    let lambda_todd = lambda_todd_bound(ctx, i, ell)?;
    let fzip = int_valuation(&(BigUint::from(p).pow(2 * i) - 1u32), ell) as u32;
    let condition = order_condition(p, ell, i)?;
    Ok(CharPBound { lambda_todd, fzip, bound: lambda_todd.min(fzip), condition })
}

/// The cohomological order of `c_{2i}(H)` is `n_i` or `n_i / 2`.
pub fn evdg_order_candidates(i: u32) -> Result<[FactoredInt; 2], BoundsError> {
    if i == 0 {
        return Err(BoundsError::ZeroIndex);
    }
    let n = nk_formula(i as u64)?.value;
    let mut halved = n.factors().clone();
    *halved.get_mut(&BigUint::from(2u32)).expect("v_2(n_i) >= 3") -= 1;
    Ok([n, FactoredInt::from_factors(halved)?])
}

/// `(g - 1)! · n_k` factored.
pub fn factorial_times_nk(g: u32, k: u32) -> Result<FactoredInt, BoundsError> {
    if g == 0 || k == 0 {
        return Err(BoundsError::ZeroIndex);
    }
    let mut acc = nk_formula(k as u64)?.value;
    for m in 2..g as u64 {
        acc = acc.mul(&factor(&BigUint::from(m))?);
    }
    debug_assert_eq!(*acc.value(), factorial(g as u64 - 1) * nk_formula(k as u64)?.value.value());
    Ok(acc)
}

/// `(g - 1)! · n_g`, a multiple of the order of the top class `c_{2g}(H)`.
pub fn evdg_top_class_bound(g: u32) -> Result<FactoredInt, BoundsError> {
    factorial_times_nk(g, g)
}

/// `(2^{2i} - 1) · B_{2i}`.
pub fn mr_quantity(i: u32) -> Result<Rational, BoundsError> {
    if i == 0 {
        return Err(BoundsError::ZeroIndex);
    }
    let two = BigInt::from(2);
    let factor = num_traits::pow(two, 2 * i as usize) - 1;
    Ok(bernoulli(2 * i as usize)? * Rational::from_integer(factor))
}

/// `v_ℓ(num((2^{2i} - 1) B_{2i}))` for a prime `ℓ > 2i`.
pub fn mr_bound(i: u32, ell: &BigUint) -> Result<u32, BoundsError> {
    require_prime(ell)?;
    if *ell <= BigUint::from(2 * i) {
        return Err(BoundsError::BelowTwoI { ell: ell.clone(), i });
    }
    let num = abs_numerator(&mr_quantity(i)?);
    Ok(int_valuation(&num, ell) as u32)
}

/// Factored numerators `num(B_n)`, computed once per ledger.
#[derive(Debug)]
struct NumeratorCache {
    limits: FactorLimits,
    map: BTreeMap<u32, PartialFactorization>,
}

impl NumeratorCache {
    fn new(limits: FactorLimits) -> Self {
        NumeratorCache { limits, map: BTreeMap::new() }
    }

    fn get(&mut self, n: u32) -> Result<&PartialFactorization, BoundsError> {
        if !self.map.contains_key(&n) {
            let num = abs_numerator(&bernoulli(n as usize)?);
            self.map.insert(n, factor_partial(&num, self.limits)?);
        }
        Ok(&self.map[&n])
    }
}
