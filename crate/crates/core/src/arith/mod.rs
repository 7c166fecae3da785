//! Exact integer and rational arithmetic.
//!
//! Rationals are `num_rational::BigRational`, which keeps every value in
//! lowest terms with a positive denominator. On top of that this module adds
//! the number-theoretic utilities the rest of the crate leans on: `ℓ`-adic
//! valuations, primality, complete factorization and multiplicative orders.

mod factor;
mod order;
mod primes;

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use factor::{factor, factor_integer, factor_partial, factor_with, FactorLimits, FactoredInt, PartialFactorization};
pub use order::multiplicative_order;
pub use primes::{is_prime, next_prime, small_primes};

/// Arbitrary-precision rational in canonical form.
pub type Rational = BigRational;

/// Serde adapter writing a [`BigUint`] as a decimal string.
pub mod biguint_string {
    use num_bigint::BigUint;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(n)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let text = String::deserialize(d)?;
        text.parse::<BigUint>().map_err(|e| D::Error::custom(format!("bad integer {text:?}: {e}")))
    }
}

/// Serde adapter writing a [`Rational`] as the string `num/den` (or an
/// integer), for use with `#[serde(with = "...")]`.
pub mod rational_string {
    use super::Rational;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&q)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        text.parse::<Rational>().map_err(|e| D::Error::custom(format!("bad rational {text:?}: {e}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("{0} is not prime")]
    NotPrime(BigUint),
    #[error("{p} is divisible by the prime {q}")]
    DivisibleByModulus { p: BigInt, q: BigUint },
    #[error("expected a positive integer, got {0}")]
    NonPositive(BigInt),
    #[error("factorization effort cap reached: {partial} remains with composite cofactors {}", join_composites(.composites))]
    EffortExceeded { partial: FactoredInt, composites: Vec<BigUint> },
}

fn join_composites(c: &[BigUint]) -> String {
    c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

/// An `ℓ`-adic valuation. Zero has infinite valuation, which orders above
/// every finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(e) => Some(e),
            Valuation::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinite)
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(e) => write!(f, "{e}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

/// Exponent of `ell` in the positive integer `n`. `ell` must be at least 2.
pub fn int_valuation(n: &BigUint, ell: &BigUint) -> u64 {
    debug_assert!(!n.is_zero());
    let mut n = n.clone();
    let mut e = 0;
    loop {
        let (q, r) = n.div_rem(ell);
        if !r.is_zero() {
            return e;
        }
        n = q;
        e += 1;
    }
}

/// The `ell`-adic valuation of `q`; negative when `ell` divides the
/// denominator.
pub fn valuation(q: &Rational, ell: &BigUint) -> Result<Valuation, ArithError> {
    if !is_prime(ell) {
        return Err(ArithError::NotPrime(ell.clone()));
    }
    if q.is_zero() {
        return Ok(Valuation::Infinite);
    }
    let num = q.numer().magnitude();
    let den = q.denom().magnitude();
    let v = int_valuation(num, ell) as i64 - int_valuation(den, ell) as i64;
    Ok(Valuation::Finite(v))
}

/// The absolute numerator of `q` in lowest terms.
pub fn abs_numerator(q: &Rational) -> BigUint {
    q.numer().magnitude().clone()
}

/// Shorthand for an integer rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `n / d`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `n!` as a big integer.
pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// Binomial coefficient `C(n, k)`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for j in 0..k {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

/// Converts a signed integer to its magnitude, rejecting non-positive input.
pub fn positive(n: &BigInt) -> Result<BigUint, ArithError> {
    if n.is_positive() {
        Ok(n.magnitude().clone())
    } else {
        Err(ArithError::NonPositive(n.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(valuation(&rat(24), &big(2)).unwrap(), Valuation::Finite(3));
        assert_eq!(valuation(&ratio(1, 6), &big(3)).unwrap(), Valuation::Finite(-1));
        assert_eq!(valuation(&rat(240), &big(5)).unwrap(), Valuation::Finite(1));
        assert_eq!(valuation(&rat(0), &big(7)).unwrap(), Valuation::Infinite);
        assert_eq!(valuation(&ratio(-691, 2730), &big(691)).unwrap(), Valuation::Finite(1));
    }

    #[test]
    fn valuation_rejects_composite_base() {
        assert_eq!(valuation(&rat(24), &big(4)), Err(ArithError::NotPrime(big(4))));
        assert!(valuation(&rat(24), &big(1)).is_err());
    }

    #[test]
    fn infinity_orders_above_finite() {
        assert!(Valuation::Infinite > Valuation::Finite(i64::MAX));
        assert_eq!(Valuation::Finite(2).max(Valuation::Finite(-3)), Valuation::Finite(2));
    }

    #[test]
    fn small_combinatorics() {
        assert_eq!(factorial(5), big(120));
        assert_eq!(binomial(13, 6), big(1716));
        assert_eq!(binomial(3, 5), big(0));
    }

    #[test]
    fn positive_rejects_negative() {
        assert!(positive(&BigInt::from(-5)).is_err());
        assert!(positive(&BigInt::from(0)).is_err());
        assert_eq!(positive(&BigInt::from(5)).unwrap(), big(5));
    }

    fn nonzero_rational() -> impl Strategy<Value = Rational> {
        (-5000i64..5000, 1i64..5000)
            .prop_filter("nonzero", |(n, _)| *n != 0)
            .prop_map(|(n, d)| ratio(n, d))
    }

    proptest! {
        #[test]
        fn valuation_is_additive(a in nonzero_rational(), b in nonzero_rational(), ell in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13, 691])) {
            let ell = big(ell);
            let lhs = valuation(&(&a * &b), &ell).unwrap().finite().unwrap();
            let rhs = valuation(&a, &ell).unwrap().finite().unwrap() + valuation(&b, &ell).unwrap().finite().unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn rational_ops_stay_canonical(a in nonzero_rational(), b in nonzero_rational()) {
            for q in [&a + &b, &a * &b, -a.clone(), a.recip(), &a - &b] {
                let g = q.numer().magnitude().gcd(q.denom().magnitude());
                prop_assert!(q.denom().is_positive());
                if q.is_zero() {
                    prop_assert!(q.denom().is_one());
                } else {
                    prop_assert!(g.is_one());
                }
            }
        }
    }
}
