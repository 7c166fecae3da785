use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};

use super::{factor, is_prime, ArithError};

/// The order of `p` in the multiplicative group modulo the prime `q`.
pub fn multiplicative_order(p: &BigInt, q: &BigUint) -> Result<BigUint, ArithError> {
    if !is_prime(q) {
        return Err(ArithError::NotPrime(q.clone()));
    }
    let qi = BigInt::from_biguint(Sign::Plus, q.clone());
    let residue = ((p % &qi) + &qi) % &qi;
    if residue.is_zero() {
        return Err(ArithError::DivisibleByModulus { p: p.clone(), q: q.clone() });
    }
    let residue = residue.magnitude().clone();
    let group = q - 1u32;
    let mut order = group.clone();
    for f in factor(&group)?.factors().keys() {
        while (&order % f).is_zero() && residue.modpow(&(&order / f), q).is_one() {
            order /= f;
        }
    }
    Ok(order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ord(p: i64, q: u64) -> u64 {
        multiplicative_order(&BigInt::from(p), &BigUint::from(q))
            .unwrap()
            .try_into()
            .unwrap()
    }

    fn brute_order(p: u64, q: u64) -> u64 {
        let r = p % q;
        let mut x = r;
        let mut e = 1;
        while x != 1 {
            x = x * r % q;
            e += 1;
        }
        e
    }

    #[test]
    fn examples() {
        assert_eq!(ord(2, 7), 3);
        assert_eq!(ord(1, 691), 1);
        assert_eq!(ord(-1, 691), 2);
        assert_eq!(ord(3, 691), brute_order(3, 691));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(multiplicative_order(&BigInt::from(14), &BigUint::from(7u32)).is_err());
        assert!(multiplicative_order(&BigInt::from(2), &BigUint::from(9u32)).is_err());
    }

    #[test]
    fn sixth_power_condition_mod_691() {
        // exhaustive scan of residues: ord divides 6 exactly when p^6 = 1
        let mut hits = 0;
        for p in 1..691u64 {
            let sixth = (1..=6).fold(1u64, |acc, _| acc * p % 691);
            let divides = 6 % ord(p as i64, 691) == 0;
            assert_eq!(divides, sixth == 1, "p = {p}");
            hits += divides as u32;
        }
        // the subgroup of order 6 in a cyclic group of order 690
        assert_eq!(hits, 6);
    }

    proptest! {
        #[test]
        fn order_divides_group_order(p in 1u64..100_000, qi in 0usize..2000) {
            let q = crate::arith::small_primes()[qi + 1] as u64;
            prop_assume!(p % q != 0);
            let e = ord(p as i64, q);
            prop_assert_eq!((q - 1) % e, 0);
            prop_assert_eq!(e, brute_order(p, q));
        }
    }
}
