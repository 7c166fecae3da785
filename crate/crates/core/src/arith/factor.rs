use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::primes::{is_prime, is_prime_u64, small_primes};
use super::{positive, ArithError};

/// A positive integer together with its complete prime factorization.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FactoredInt {
    value: BigUint,
    factors: BTreeMap<BigUint, u32>,
}

impl FactoredInt {
    pub fn one() -> Self {
        FactoredInt { value: BigUint::one(), factors: BTreeMap::new() }
    }

    /// Builds a value from prime powers, checking every key for primality.
    pub fn from_factors(factors: BTreeMap<BigUint, u32>) -> Result<Self, ArithError> {
        let mut value = BigUint::one();
        let mut clean = BTreeMap::new();
        for (p, e) in factors {
            if !is_prime(&p) {
                return Err(ArithError::NotPrime(p));
            }
            if e == 0 {
                continue;
            }
            value *= p.pow(e);
            clean.insert(p, e);
        }
        Ok(FactoredInt { value, factors: clean })
    }

    pub fn prime_power(p: u64, e: u32) -> Result<Self, ArithError> {
        Self::from_factors(BTreeMap::from([(BigUint::from(p), e)]))
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn factors(&self) -> &BTreeMap<BigUint, u32> {
        &self.factors
    }

    pub fn exponent(&self, p: &BigUint) -> u32 {
        self.factors.get(p).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_prime(&self) -> bool {
        self.factors.len() == 1 && self.factors.values().all(|&e| e == 1)
    }

    pub fn mul(&self, other: &FactoredInt) -> FactoredInt {
        let mut factors = self.factors.clone();
        for (p, e) in &other.factors {
            *factors.entry(p.clone()).or_insert(0) += e;
        }
        FactoredInt { value: &self.value * &other.value, factors }
    }

    /// Largest divisor whose primes all satisfy `keep`.
    pub fn restrict(&self, keep: impl Fn(&BigUint) -> bool) -> FactoredInt {
        let factors: BTreeMap<_, _> = self
            .factors
            .iter()
            .filter(|(p, _)| keep(p))
            .map(|(p, e)| (p.clone(), *e))
            .collect();
        let value = factors.iter().fold(BigUint::one(), |acc, (p, e)| acc * p.pow(*e));
        FactoredInt { value, factors }
    }

    /// `2^3*3` style rendering with no spaces; `1` for the empty product.
    pub fn compact(&self) -> String {
        self.render("*")
    }

    fn render(&self, sep: &str) -> String {
        if self.factors.is_empty() {
            return "1".to_string();
        }
        self.factors
            .iter()
            .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect::<Vec<_>>()
            .join(sep)
    }
}

impl fmt::Display for FactoredInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(" · "))
    }
}

#[derive(Serialize, Deserialize)]
struct FactoredRepr {
    value: String,
    factors: Vec<(String, u32)>,
}

impl Serialize for FactoredInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        FactoredRepr {
            value: self.value.to_string(),
            factors: self.factors.iter().map(|(p, e)| (p.to_string(), *e)).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FactoredInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let repr = FactoredRepr::deserialize(d)?;
        let mut map = BTreeMap::new();
        for (p, e) in repr.factors {
            let p: BigUint = p.parse().map_err(D::Error::custom)?;
            map.insert(p, e);
        }
        let out = FactoredInt::from_factors(map).map_err(D::Error::custom)?;
        if out.value.to_string() != repr.value {
            return Err(D::Error::custom("factor product does not match value"));
        }
        Ok(out)
    }
}

/// Work budget for the Pollard-rho stage.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorLimits {
    /// Total rho iterations allowed per composite cofactor, across restarts.
    pub rho_iterations: u64,
}

impl Default for FactorLimits {
    fn default() -> Self {
        FactorLimits { rho_iterations: 4_000_000 }
    }
}

/// Outcome of a factorization that may stop short.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialFactorization {
    pub primes: FactoredInt,
    /// Cofactors known to be composite but not split within the budget.
    pub composites: Vec<BigUint>,
}

impl PartialFactorization {
    pub fn is_complete(&self) -> bool {
        self.composites.is_empty()
    }
}

/// Complete factorization under the default effort cap.
pub fn factor(n: &BigUint) -> Result<FactoredInt, ArithError> {
    factor_with(n, FactorLimits::default())
}

/// Factorization of a signed integer; only positive input is accepted.
pub fn factor_integer(n: &BigInt) -> Result<FactoredInt, ArithError> {
    factor(&positive(n)?)
}

pub fn factor_with(n: &BigUint, limits: FactorLimits) -> Result<FactoredInt, ArithError> {
    let partial = factor_partial(n, limits)?;
    if partial.is_complete() {
        Ok(partial.primes)
    } else {
        Err(ArithError::EffortExceeded { partial: partial.primes, composites: partial.composites })
    }
}

/// Trial division below 10^6, then Brent's rho with Miller-Rabin
/// certification of every cofactor.
pub fn factor_partial(n: &BigUint, limits: FactorLimits) -> Result<PartialFactorization, ArithError> {
    if n.is_zero() {
        return Err(ArithError::NonPositive(BigInt::zero()));
    }
    let mut found: BTreeMap<BigUint, u32> = BTreeMap::new();
    let mut rest = n.clone();
    for &p in small_primes() {
        if let Some(small) = rest.to_u64() {
            if (p as u64) * (p as u64) > small {
                break;
            }
        }
        if (&rest % p).is_zero() {
            let mut e = 0;
            while (&rest % p).is_zero() {
                rest /= p;
                e += 1;
            }
            found.insert(BigUint::from(p), e);
        }
    }
    let mut composites = Vec::new();
    let mut stack = Vec::new();
    if !rest.is_one() {
        stack.push(rest);
    }
    while let Some(m) = stack.pop() {
        if is_prime(&m) {
            *found.entry(m).or_insert(0) += 1;
            continue;
        }
        match split(&m, limits.rho_iterations) {
            Some(d) => {
                let other = &m / &d;
                stack.push(d);
                stack.push(other);
            }
            None => composites.push(m),
        }
    }
    composites.sort();
    let value = found.iter().fold(BigUint::one(), |acc, (p, e)| acc * p.pow(*e));
    Ok(PartialFactorization { primes: FactoredInt { value, factors: found }, composites })
}

/// A nontrivial divisor of the composite `n`, or `None` once the budget is spent.
fn split(n: &BigUint, budget: u64) -> Option<BigUint> {
    if let Some(small) = n.to_u64() {
        return split_u64(small, budget).map(BigUint::from);
    }
    split_big(n, budget)
}

fn split_u64(n: u64, budget: u64) -> Option<u64> {
    debug_assert!(!is_prime_u64(n));
    if n % 2 == 0 {
        return Some(2);
    }
    let f = |y: u64, c: u64| ((y as u128 * y as u128 + c as u128) % n as u128) as u64;
    let dist = |a: u64, b: u64| a.max(b) - a.min(b);
    let mut spent = 0u64;
    for c in 1u64.. {
        let m = 128u64;
        let (mut y, mut r, mut q, mut g) = (2u64, 1u64, 1u64, 1u64);
        let (mut x, mut ys) = (0u64, 0u64);
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y, c);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..m.min(r - k) {
                    y = f(y, c);
                    q = ((q as u128 * dist(x, y) as u128) % n as u128) as u64;
                }
                g = q.gcd(&n);
                k += m;
            }
            spent += 2 * r;
            r *= 2;
            if spent > budget {
                return None;
            }
        }
        if g == n {
            loop {
                ys = f(ys, c);
                g = dist(x, ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return Some(g);
        }
    }
    unreachable!()
}

fn split_big(n: &BigUint, budget: u64) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u32));
    }
    let f = |y: &BigUint, c: &BigUint| (y * y + c) % n;
    let dist = |a: &BigUint, b: &BigUint| if a > b { a - b } else { b - a };
    let mut spent = 0u64;
    for c in 1u64.. {
        let c = BigUint::from(c);
        let m = 128u64;
        let mut y = BigUint::from(2u32);
        let (mut r, mut q, mut g) = (1u64, BigUint::one(), BigUint::one());
        let (mut x, mut ys) = (BigUint::zero(), BigUint::zero());
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y, &c);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y, &c);
                    q = (&q * dist(&x, &y)) % n;
                }
                g = q.gcd(n);
                k += m;
            }
            spent += 2 * r;
            r *= 2;
            if spent > budget {
                return None;
            }
        }
        if &g == n {
            loop {
                ys = f(&ys, &c);
                g = dist(&x, &ys).gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != n {
            return Some(g);
        }
    }
    unreachable!()
}
