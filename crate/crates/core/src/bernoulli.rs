//! Bernoulli numbers and the sequence `n_k = gcd{ p^{2k} - 1 : p prime, p > 2k + 1 }`.
//!
//! `n_k` is available three ways: a closed form from its `ℓ`-adic
//! valuations, the denominator of `B_{2k} / (-4k)`, and a direct gcd over a
//! finite sample of primes. [`nk_cross_checked`] runs all three and refuses to
//! return a value they disagree on.

use std::collections::BTreeMap;
use std::sync::RwLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{binomial, int_valuation, is_prime, next_prime, FactoredInt, Rational};

/// Largest Bernoulli index served by [`bernoulli`].
pub const DEFAULT_MAX_INDEX: usize = 200;

/// Primes sampled by default in the gcd method, and the tail that must leave
/// the running gcd unchanged for it to count as stable.
pub const DEFAULT_GCD_PRIMES: usize = 50;
pub const STABILITY_TAIL: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BernoulliError {
    #[error("Bernoulli index {n} exceeds the configured maximum {max}")]
    IndexTooLarge { n: usize, max: usize },
    #[error("n_k must have k >= 1")]
    ZeroIndex,
    #[error("n_{k} methods disagree: formula {formula}, denominator {denominator}, gcd sample {gcd}")]
    Mismatch { k: u64, formula: BigUint, denominator: BigUint, gcd: BigUint },
    #[error("gcd sample for n_{k} did not stabilize over {primes} primes")]
    Unstable { k: u64, primes: usize },
}

/// Exact `B_0, ..., B_max` in the signed convention (`B_1 = -1/2`).
#[derive(Debug, Clone, PartialEq)]
pub struct BernoulliTable {
    values: Vec<Rational>,
}

impl BernoulliTable {
    pub fn new(max: usize) -> Self {
        let mut values = Vec::with_capacity(max + 1);
        extend(&mut values, max);
        BernoulliTable { values }
    }

    pub fn max(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, n: usize) -> Option<&Rational> {
        self.values.get(n)
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }
}

/// Appends `B_len .. B_max` using `sum_{j=0}^{n} C(n+1, j) B_j = 0`.
fn extend(values: &mut Vec<Rational>, max: usize) {
    while values.len() <= max {
        let n = values.len();
        if n == 0 {
            values.push(Rational::one());
            continue;
        }
        if n >= 3 && n % 2 == 1 {
            values.push(Rational::zero());
            continue;
        }
        let mut acc = Rational::zero();
        for (j, b) in values.iter().enumerate() {
            if !b.is_zero() {
                acc += b * Rational::from_integer(BigInt::from(binomial(n as u64 + 1, j as u64)));
            }
        }
        values.push(-acc / Rational::from_integer(BigInt::from(n + 1)));
    }
}

static CACHE: RwLock<Vec<Rational>> = RwLock::new(Vec::new());

/// `B_n` for `n <= DEFAULT_MAX_INDEX`, memoized process-wide.
pub fn bernoulli(n: usize) -> Result<Rational, BernoulliError> {
    if n > DEFAULT_MAX_INDEX {
        return Err(BernoulliError::IndexTooLarge { n, max: DEFAULT_MAX_INDEX });
    }
    if let Some(b) = CACHE.read().expect("bernoulli cache poisoned").get(n) {
        return Ok(b.clone());
    }
    let mut cache = CACHE.write().expect("bernoulli cache poisoned");
    extend(&mut cache, n);
    Ok(cache[n].clone())
}

/// Which computation produced or confirmed an `n_k` value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NkMethod {
    ValuationFormula,
    BernoulliDenominator,
    GcdSample,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NkValue {
    pub k: u64,
    pub value: FactoredInt,
    pub provenance: Vec<NkMethod>,
}

/// `n_k = 2^{3 + v_2(k)} · prod ℓ^{1 + v_ℓ(k)}` over odd primes `ℓ` with
/// `(ℓ - 1) | 2k`.
pub fn nk_formula(k: u64) -> Result<NkValue, BernoulliError> {
    if k == 0 {
        return Err(BernoulliError::ZeroIndex);
    }
    let kb = BigUint::from(k);
    let mut factors = BTreeMap::new();
    factors.insert(BigUint::from(2u32), 3 + int_valuation(&kb, &BigUint::from(2u32)) as u32);
    for ell in (3..=2 * k + 1).step_by(2) {
        if (2 * k) % (ell - 1) == 0 && is_prime(&BigUint::from(ell)) {
            let e = 1 + int_valuation(&kb, &BigUint::from(ell)) as u32;
            factors.insert(BigUint::from(ell), e);
        }
    }
    let value = FactoredInt::from_factors(factors).expect("keys are prime");
    Ok(NkValue { k, value, provenance: vec![NkMethod::ValuationFormula] })
}

/// Denominator of `B_{2k} / (-4k)` in lowest terms.
pub fn nk_denominator(k: u64) -> Result<BigUint, BernoulliError> {
    if k == 0 {
        return Err(BernoulliError::ZeroIndex);
    }
    let b = bernoulli(2 * k as usize)?;
    let q = b / Rational::from_integer(BigInt::from(-4 * k as i64));
    Ok(q.denom().magnitude().clone())
}

/// Running gcd of `p^{2k} - 1` over successive primes above `2k + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GcdSample {
    pub value: BigUint,
    pub primes: Vec<BigUint>,
    /// True when the last [`STABILITY_TAIL`] primes left the gcd unchanged.
    pub stable: bool,
}

pub fn nk_gcd_sample(k: u64, prime_count: usize) -> Result<GcdSample, BernoulliError> {
    if k == 0 {
        return Err(BernoulliError::ZeroIndex);
    }
    let mut p = BigUint::from(2 * k + 1);
    let mut g = BigUint::zero();
    let mut primes = Vec::with_capacity(prime_count);
    let mut last_change = 0;
    for idx in 0..prime_count.max(1) {
        p = next_prime(&p);
        let term = p.pow(2 * k as u32) - 1u32;
        let next = g.gcd(&term);
        if next != g {
            last_change = idx;
        }
        g = next;
        primes.push(p.clone());
    }
    let stable = primes.len() - last_change > STABILITY_TAIL;
    Ok(GcdSample { value: g, primes, stable })
}

/// Product of the primes `p` with `(p - 1) | 2k`, which is the denominator
/// of `B_{2k}` by von Staudt–Clausen.
pub fn von_staudt_clausen_denominator(k: u64) -> BigUint {
    (2..=2 * k + 1)
        .filter(|&p| (2 * k) % (p - 1) == 0 && is_prime(&BigUint::from(p)))
        .fold(BigUint::one(), |acc, p| acc * p)
}

/// `n_k` confirmed by all three methods.
pub fn nk_cross_checked(k: u64) -> Result<NkValue, BernoulliError> {
    let mut nk = nk_formula(k)?;
    let denominator = nk_denominator(k)?;
    let sample = nk_gcd_sample(k, DEFAULT_GCD_PRIMES)?;
    if !sample.stable {
        return Err(BernoulliError::Unstable { k, primes: DEFAULT_GCD_PRIMES });
    }
    if *nk.value.value() != denominator || *nk.value.value() != sample.value {
        return Err(BernoulliError::Mismatch {
            k,
            formula: nk.value.value().clone(),
            denominator,
            gcd: sample.value,
        });
    }
    nk.provenance = vec![NkMethod::ValuationFormula, NkMethod::BernoulliDenominator, NkMethod::GcdSample];
    Ok(nk)
}
