use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

pub(super) const SIEVE_LIMIT: u32 = 1_000_000;

/// Below this bound the first 13 prime bases make Miller-Rabin
/// deterministic (Sorenson and Webster, 2015).
const DETERMINISTIC_BOUND: &str = "3317044064679887385961981";
const DETERMINISTIC_BASES: usize = 13;
/// Bases used past the deterministic range.
const PROBABILISTIC_BASES: usize = 64;

/// All primes below 10^6, ascending.
pub fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = SIEVE_LIMIT as usize;
        let mut composite = vec![false; n];
        let mut out = Vec::with_capacity(78_498);
        for i in 2..n {
            if composite[i] {
                continue;
            }
            out.push(i as u32);
            let mut j = i * i;
            while j < n {
                composite[j] = true;
                j += i;
            }
        }
        out
    })
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

fn strong_probable_prime_u64(n: u64, a: u64) -> bool {
    let a = a % n;
    if a == 0 {
        return true;
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    let mut x = pow_mod(a, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mul_mod(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

fn strong_probable_prime(n: &BigUint, a: &BigUint) -> bool {
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let a = a % n;
    if a.is_zero() {
        return true;
    }
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    let mut x = a.modpow(&d, n);
    if x == one || x == n_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == n_minus_1 {
            return true;
        }
    }
    false
}

pub(super) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &small_primes()[..DETERMINISTIC_BASES] {
        let p = p as u64;
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    // The first 12 prime bases already suffice below 2^64.
    small_primes()[..12]
        .iter()
        .all(|&a| strong_probable_prime_u64(n, a as u64))
}

/// Primality test: deterministic below 3.3·10^24, and a strong probable
/// prime test to 64 fixed prime bases beyond it.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    for &p in &small_primes()[..200] {
        if (n % p).is_zero() {
            return false;
        }
    }
    let bound: BigUint = DETERMINISTIC_BOUND.parse().expect("constant parses");
    let rounds = if *n < bound {
        DETERMINISTIC_BASES
    } else {
        PROBABILISTIC_BASES
    };
    small_primes()[..rounds]
        .iter()
        .all(|&a| strong_probable_prime(n, &BigUint::from(a)))
}

/// The smallest prime strictly greater than `n`.
pub fn next_prime(n: &BigUint) -> BigUint {
    let two = BigUint::from(2u32);
    if *n < two {
        return two;
    }
    let mut c = n + 1u32;
    if c.is_even() && c != two {
        c += 1u32;
    }
    while !is_prime(&c) {
        c += 2u32;
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
    }

    #[test]
    fn sieve_size() {
        assert_eq!(small_primes().len(), 78_498);
        assert_eq!(small_primes()[..5], [2, 3, 5, 7, 11]);
    }

    #[test]
    fn named_primes() {
        for p in [691u64, 3617, 43867, 283, 617, 2294797, 657931, 9349, 362903] {
            assert!(is_prime(&BigUint::from(p)), "{p}");
        }
        for c in [1u64, 0, 174611, 854513, 236364091, 8553103, 23749461029] {
            assert!(!is_prime(&BigUint::from(c)), "{c}");
        }
    }

    #[test]
    fn agrees_with_trial_division() {
        for n in 0..20_000u64 {
            assert_eq!(is_prime(&BigUint::from(n)), brute(n), "{n}");
        }
    }

    #[test]
    fn strong_pseudoprimes_are_caught() {
        // strong pseudoprimes to several small bases
        for n in [2047u64, 1373653, 25326001, 3215031751, 2152302898747, 3474749660383, 341550071728321] {
            assert!(!is_prime(&BigUint::from(n)), "{n}");
        }
        // 3825123056546413051 is a strong pseudoprime to bases 2..=23
        assert!(!is_prime(&BigUint::from(3825123056546413051u64)));
    }

    #[test]
    fn large_values() {
        let m127 = (BigUint::one() << 127u32) - 1u32;
        assert!(is_prime(&m127));
        let m61 = (BigUint::one() << 61u32) - 1u32;
        assert!(!is_prime(&(&m61 * &m127)));
        // 2^89 - 1 lies beyond u64 but inside the deterministic range
        assert!(is_prime(&((BigUint::one() << 89u32) - 1u32)));
    }

    #[test]
    fn next_prime_steps() {
        assert_eq!(next_prime(&BigUint::from(0u32)), BigUint::from(2u32));
        assert_eq!(next_prime(&BigUint::from(2u32)), BigUint::from(3u32));
        assert_eq!(next_prime(&BigUint::from(105u32)), BigUint::from(107u32));
        assert_eq!(next_prime(&BigUint::from(690u32)), BigUint::from(691u32));
    }
}
