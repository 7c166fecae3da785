//! Unit inversion, `exp` and `log` by weight recursion.
//!
//! With `D` the derivation that multiplies the weight-`w` component by `w`,
//! `F = exp(A)` satisfies `D F = (D A) F`, which determines `F` one weight at
//! a time. The same relation read backwards gives `log`.

use std::collections::HashMap;

use num_traits::{One, Zero};

use super::{accumulate_product, Component, ExponentVector, GradedPoly, RingError};
use crate::arith::{rat, Rational};

fn unit_component() -> Component {
    vec![(ExponentVector::one(), Rational::one())]
}

fn collect(map: HashMap<ExponentVector, Rational>) -> Component {
    map.into_iter().filter(|(_, q)| !q.is_zero()).collect()
}

impl GradedPoly {
    /// Multiplicative inverse of an element with nonzero constant term.
    pub fn invert_unit(&self) -> Result<GradedPoly, RingError> {
        let a0 = self.constant_term();
        if a0.is_zero() {
            return Err(RingError::NotUnit);
        }
        let n = self.truncation as usize;
        let a = self.components();
        let minus_inv = -a0.recip();
        let mut b: Vec<Component> = vec![vec![(ExponentVector::one(), a0.recip())]];
        for w in 1..=n {
            let mut acc = HashMap::new();
            for j in 1..=w {
                accumulate_product(&mut acc, &a[j], &b[w - j], Some(&minus_inv));
            }
            b.push(collect(acc));
        }
        Ok(GradedPoly::from_components(self.truncation, b))
    }

    /// Truncated exponential of an element with zero constant term.
    pub fn exp(&self) -> Result<GradedPoly, RingError> {
        let a0 = self.constant_term();
        if !a0.is_zero() {
            return Err(RingError::ExpDomain(a0));
        }
        let n = self.truncation as usize;
        let a = self.components();
        let mut f: Vec<Component> = vec![unit_component()];
        for w in 1..=n {
            let mut acc = HashMap::new();
            for j in 1..=w {
                let s = rat(j as i64) / rat(w as i64);
                accumulate_product(&mut acc, &a[j], &f[w - j], Some(&s));
            }
            f.push(collect(acc));
        }
        Ok(GradedPoly::from_components(self.truncation, f))
    }

    /// Truncated logarithm of an element with constant term 1.
    pub fn log(&self) -> Result<GradedPoly, RingError> {
        let f0 = self.constant_term();
        if !f0.is_one() {
            return Err(RingError::LogDomain(f0));
        }
        let n = self.truncation as usize;
        let f = self.components();
        let mut a: Vec<Component> = vec![Vec::new()];
        for w in 1..=n {
            let mut acc: HashMap<ExponentVector, Rational> =
                f[w].iter().map(|(m, q)| (m.clone(), q.clone())).collect();
            for j in 1..w {
                let s = -rat(j as i64) / rat(w as i64);
                accumulate_product(&mut acc, &a[j], &f[w - j], Some(&s));
            }
            a.push(collect(acc));
        }
        Ok(GradedPoly::from_components(self.truncation, a))
    }
}
