//! Brute-force splitting-principle oracle.
//!
//! Expands a symmetric function of `m` explicit Chern roots `x_1, ..., x_m`
//! as a polynomial in the roots, then rewrites it in the elementary symmetric
//! polynomials by repeatedly cancelling the lexicographically leading
//! monomial. Cost grows like `C(N + m, m)`, which is fine for `N, m <= 8`
//! and hopeless much beyond; it exists to check the power-sum route.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use crate::arith::{rat, Rational};
use crate::graded_ring::{ExponentVector, GradedPoly};

type RootPoly = BTreeMap<Vec<u8>, Rational>;

/// `prod_j f(x_j)` over `roots` roots, with `f = series[0] + series[1] x + ...`.
pub fn multiplicative_root_expansion(series: &[Rational], roots: usize, truncation: u32) -> GradedPoly {
    let mut poly = RootPoly::new();
    let mut exps = vec![0u8; roots];
    enumerate(&mut exps, 0, truncation, &mut |e| {
        let q = e.iter().fold(rat(1), |acc, &k| acc * coefficient(series, k as usize));
        if !q.is_zero() {
            poly.insert(e.to_vec(), q);
        }
    });
    reduce(poly, roots, truncation)
}

/// `sum_j f(x_j)` over `roots` roots.
pub fn additive_root_expansion(series: &[Rational], roots: usize, truncation: u32) -> GradedPoly {
    let mut poly = RootPoly::new();
    let constant = coefficient(series, 0) * rat(roots as i64);
    if !constant.is_zero() {
        poly.insert(vec![0; roots], constant);
    }
    for k in 1..=truncation as usize {
        let q = coefficient(series, k);
        if q.is_zero() {
            continue;
        }
        for j in 0..roots {
            let mut e = vec![0u8; roots];
            e[j] = k as u8;
            poly.insert(e, q.clone());
        }
    }
    reduce(poly, roots, truncation)
}

fn coefficient(series: &[Rational], k: usize) -> Rational {
    series.get(k).cloned().unwrap_or_else(Rational::zero)
}

/// Visits every exponent vector with total degree at most `budget`.
fn enumerate(exps: &mut [u8], pos: usize, budget: u32, visit: &mut impl FnMut(&[u8])) {
    if pos == exps.len() {
        visit(exps);
        return;
    }
    for k in 0..=budget {
        exps[pos] = k as u8;
        enumerate(exps, pos + 1, budget - k, visit);
    }
    exps[pos] = 0;
}

fn mul(a: &RootPoly, b: &RootPoly) -> RootPoly {
    let mut out: HashMap<Vec<u8>, Rational> = HashMap::new();
    for (ma, qa) in a {
        for (mb, qb) in b {
            let m: Vec<u8> = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
            *out.entry(m).or_insert_with(Rational::zero) += qa * qb;
        }
    }
    out.into_iter().filter(|(_, q)| !q.is_zero()).collect()
}

fn elementary(k: usize, roots: usize) -> RootPoly {
    let mut out = RootPoly::new();
    for mask in 0u32..(1 << roots) {
        if mask.count_ones() as usize == k {
            let m = (0..roots).map(|j| ((mask >> j) & 1) as u8).collect();
            out.insert(m, rat(1));
        }
    }
    out
}

/// Expansion of `prod_k e_k^{d[k-1]}` in the roots, memoized on `d`.
fn e_product(d: &[u32], roots: usize, elem: &[RootPoly], cache: &mut HashMap<Vec<u32>, RootPoly>) -> RootPoly {
    if let Some(p) = cache.get(d) {
        return p.clone();
    }
    let out = match d.iter().position(|&x| x > 0) {
        None => RootPoly::from([(vec![0u8; roots], rat(1))]),
        Some(k) => {
            let mut smaller = d.to_vec();
            smaller[k] -= 1;
            let base = e_product(&smaller, roots, elem, cache);
            mul(&base, &elem[k + 1])
        }
    };
    cache.insert(d.to_vec(), out.clone());
    out
}

/// Rewrites a symmetric polynomial in the roots as a polynomial in
/// `c_k = e_k(x_1, ..., x_m)`.
fn reduce(mut poly: RootPoly, roots: usize, truncation: u32) -> GradedPoly {
    let elem: Vec<RootPoly> = (0..=roots).map(|k| elementary(k, roots)).collect();
    let mut cache = HashMap::new();
    let mut result = Vec::new();
    while let Some((lead, q)) = poly.iter().next_back().map(|(m, q)| (m.clone(), q.clone())) {
        assert!(lead.windows(2).all(|w| w[0] >= w[1]), "input is not symmetric");
        let d: Vec<u32> = (0..roots)
            .map(|k| lead[k] as u32 - lead.get(k + 1).copied().unwrap_or(0) as u32)
            .collect();
        for (m, c) in e_product(&d, roots, &elem, &mut cache) {
            *poly.entry(m).or_insert_with(Rational::zero) -= &q * c;
        }
        poly.retain(|_, c| !c.is_zero());
        let pairs: Vec<(u32, u32)> = d.iter().enumerate().map(|(k, &e)| (k as u32 + 1, e)).collect();
        result.push((ExponentVector::from_pairs(&pairs), q));
    }
    GradedPoly::from_terms(truncation, result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;

    #[test]
    fn two_roots_of_todd() {
        // Q(x) = 1 + x/2 + x^2/12 + ...
        let q = [rat(1), ratio(1, 2), ratio(1, 12)];
        let td = multiplicative_root_expansion(&q, 2, 2);
        assert_eq!(td.to_text("c"), "1 + 1/2*c1 + 1/12*c1^2 + 1/12*c2");
    }

    #[test]
    fn power_sums_from_roots() {
        // sum x_j^2 = e_1^2 - 2 e_2 ; sum x_j^3 = e_1^3 - 3 e_1 e_2 + 3 e_3
        let sq = additive_root_expansion(&[rat(0), rat(0), rat(1)], 3, 3);
        assert_eq!(sq.to_text("c"), "c1^2 - 2*c2");
        let cube = additive_root_expansion(&[rat(0), rat(0), rat(0), rat(1)], 3, 3);
        assert_eq!(cube.to_text("c"), "c1^3 - 3*c1*c2 + 3*c3");
    }

    #[test]
    fn constant_series_counts_roots() {
        assert_eq!(additive_root_expansion(&[rat(1)], 4, 2).to_text("c"), "4");
        assert_eq!(multiplicative_root_expansion(&[rat(1), rat(1)], 3, 3).to_text("c"), "1 + c1 + c2 + c3");
    }
}
