use super::roots::{additive_root_expansion, multiplicative_root_expansion};
use super::*;
use crate::arith::{factorial, ratio};
use crate::bernoulli::bernoulli;

fn poly(s: &str, n: u32) -> GradedPoly {
    GradedPoly::parse(s, n).unwrap()
}

fn newton(s: &str, n: u32) -> GradedPoly {
    GradedPoly::parse_with_symbol(s, n, "N").unwrap()
}

fn exp_series(n: u32) -> Vec<Rational> {
    (0..=n).map(|k| Rational::new(BigInt::one(), BigInt::from(factorial(k as u64)))).collect()
}

/// A total class of "rank" `rank` whose weight-`k` part is a mixed
/// polynomial rather than a single variable: the image of `c(F)` under the
/// ring map `f_k -> c_1^k - 2 c_k + k c_1 c_{k-1}`.
fn mixed_total(rank: u32, truncation: u32) -> GradedPoly {
    let mut images = BTreeMap::new();
    for k in 1..=rank {
        let mut image = GradedPoly::var(truncation, 1).pow(k).unwrap().checked_sub(&GradedPoly::var(truncation, k).scale(&rat(2))).unwrap();
        if k >= 2 {
            let cross = GradedPoly::var(truncation, 1).mul(&GradedPoly::var(truncation, k - 1)).unwrap();
            image = image.checked_add(&cross.scale(&rat(k as i64))).unwrap();
        }
        images.insert(k, image);
    }
    BundleSpec::new(rank, truncation).unwrap().total_chern().substitute(&images, truncation).unwrap()
}

#[test]
fn todd_low_degrees() {
    let td = todd_class(&BundleSpec::universal(2)).unwrap();
    assert_eq!(td.to_text("c"), "1 + 1/2*c1 + 1/12*c1^2 + 1/12*c2");
    let td4 = todd_class(&BundleSpec::universal(4)).unwrap();
    assert_eq!(td4.component(1).unwrap(), poly("1/2*c1", 4));
    assert_eq!(td4.component(3).unwrap(), poly("1/24*c1*c2", 4));
    assert_eq!(td4.coefficient(&ExponentVector::var_pow(1, 4)), ratio(-1, 720));
    assert_eq!(
        td4.component(4).unwrap(),
        poly("-1/720*c1^4 + 1/180*c1^2*c2 + 1/720*c1*c3 + 1/240*c2^2 - 1/720*c4", 4)
    );
}

#[test]
fn todd_respects_rank() {
    let td = todd_class(&BundleSpec::new(1, 4).unwrap()).unwrap();
    assert_eq!(td.to_text("c"), "1 + 1/2*c1 + 1/12*c1^2 - 1/720*c1^4");
    assert!(todd_class(&BundleSpec::new(2, 6).unwrap()).unwrap().max_index() <= 2);
    assert_eq!(BundleSpec::new(0, 3), Err(CharClassError::ZeroRank));
}

#[test]
fn todd_series_of_one_variable() {
    let q = MultiplicativeSequence::todd(6);
    let expected = [ratio(1, 1), ratio(1, 2), ratio(1, 12), ratio(0, 1), ratio(-1, 720), ratio(0, 1), ratio(1, 30240)];
    assert_eq!(q.coefficients(), &expected);
    assert!(MultiplicativeSequence::new("bad", vec![ratio(2, 1)]).is_err());
    assert!(q.log_coefficients(7).is_err());
}

#[test]
fn todd_log_coefficients_have_closed_form() {
    // log(x/(1-e^{-x})) = x/2 - sum_{n>=1} B_{2n} x^{2n} / (2n (2n)!)
    let n = 30;
    let s = MultiplicativeSequence::todd(n).log_coefficients(n).unwrap();
    for (k, sk) in s.iter().enumerate() {
        let expected = match k {
            0 => ratio(0, 1),
            1 => ratio(1, 2),
            _ if k % 2 == 1 => ratio(0, 1),
            _ => -bernoulli(k).unwrap() / Rational::from_integer(BigInt::from(factorial(k as u64)) * BigInt::from(k)),
        };
        assert_eq!(sk, &expected, "s_{k}");
    }
}

#[test]
fn chern_character_parts() {
    let ch = chern_character(&BundleSpec::new(3, 3).unwrap()).unwrap();
    assert_eq!(ch.component(0).unwrap(), poly("3", 3));
    assert_eq!(ch.component(2).unwrap(), poly("1/2*c1^2 - c2", 3));
    let line = chern_character(&BundleSpec::new(1, 6).unwrap()).unwrap();
    assert_eq!(line, GradedPoly::var(6, 1).exp().unwrap());
}

#[test]
fn newton_classes_in_chern_classes() {
    assert_eq!(newton_from_chern(1, 3).unwrap(), poly("c1", 1));
    assert_eq!(newton_from_chern(2, 3).unwrap(), poly("c1^2 - 2*c2", 2));
    assert_eq!(newton_from_chern(3, 3).unwrap(), poly("c1^3 - 3*c1*c2 + 3*c3", 3));
    assert_eq!(newton_from_chern(3, 1).unwrap(), poly("c1^3", 3));
    assert_eq!(chern_from_newton(2, 2).unwrap(), newton("1/2*N1^2 - 1/2*N2", 2));
    assert_eq!(chern_from_newton(3, 2).unwrap(), GradedPoly::zero(3));
    assert!(newton_from_chern(0, 2).is_err());
}

#[test]
fn newton_matches_root_oracle() {
    for k in 1..=6u32 {
        let mut series = vec![Rational::zero(); k as usize + 1];
        series[k as usize] = Rational::one();
        assert_eq!(newton_from_chern(k, k).unwrap(), additive_root_expansion(&series, k as usize, k), "N_{k}");
    }
}

#[test]
fn basis_change_round_trip() {
    for k in 1..=10u32 {
        let rank = k;
        let lambda = chern_from_newton(k, rank).unwrap();
        let back = newton_basis_to_chern(&lambda, rank).unwrap();
        assert_eq!(back, GradedPoly::var(k, k), "k = {k}");
    }
}

#[test]
fn basis_change_respects_small_rank() {
    // With rank 2, e_3 of the roots vanishes identically.
    for k in 3..=6 {
        let n = BTreeMap::from_iter((1..=k).map(|j| (j, newton_from_chern(j, 2).unwrap().with_truncation(k))));
        let e: Vec<GradedPoly> = (0..=k).map(|j| if j == 0 { GradedPoly::zero(k) } else { n[&j].clone() }).collect();
        let elem = elementary_from_power_sums(&e, k as usize, k).unwrap();
        assert!(elem[3].is_zero(), "k = {k}");
    }
}

#[test]
fn derham_examples() {
    assert_eq!(derham_total_chern(1, 2).unwrap(), poly("1 - c1^2", 2));
    assert_eq!(derham_chern_lambda(1, 4).unwrap(), poly("-c1^2 + 2*c2", 2));
    assert_eq!(derham_chern_in_newton(1, 4).unwrap(), newton("-N2", 2));
    assert_eq!(derham_chern_in_newton(2, 4).unwrap(), newton("1/2*N2^2 - 1/2*N4", 4));
    assert_eq!(
        derham_chern_in_newton(3, 6).unwrap(),
        newton("-1/6*N2^3 + 1/2*N2*N4 - 1/3*N6", 6)
    );
    assert_eq!(
        derham_chern_in_newton(4, 6).unwrap(),
        newton("1/24*N2^4 - 1/4*N2^2*N4 + 1/3*N2*N6 + 1/8*N4^2 - 1/4*N8", 8)
    );
    assert!(derham_chern_in_newton(5, 4).is_err());
    assert!(derham_chern_in_newton(0, 4).is_err());
}

#[test]
fn derham_newton_and_lambda_forms_agree() {
    for g in 1..=6u32 {
        for i in 1..=g {
            let lambda = derham_chern_lambda(i, g).unwrap();
            let via_newton = newton_basis_to_chern(&derham_chern_in_newton(i, g).unwrap(), g).unwrap();
            assert_eq!(via_newton, lambda, "g = {g}, i = {i}");
        }
    }
}

#[test]
fn derham_odd_parts_vanish() {
    for g in 1..=8 {
        for n in 1..=16 {
            let c = derham_total_chern(g, n).unwrap();
            for w in (1..=n).step_by(2) {
                assert!(c.component(w).unwrap().is_zero(), "g = {g}, N = {n}, w = {w}");
            }
            assert_eq!(c.sign_involution(), c);
        }
    }
}

#[test]
fn duality_holds() {
    for r in 1..=5 {
        for n in 1..=10 {
            let report = verify_todd_det_duality(r, n).unwrap();
            assert!(report.equal, "r = {r}, N = {n}: {report:?}");
        }
    }
}

#[test]
fn duality_sides_match_root_oracle() {
    let n = 8;
    let q = MultiplicativeSequence::todd(n);
    // Td(E^∨) has roots -x_j; exp(c_1) has the roots summed.
    let dual: Vec<Rational> = q.coefficients().iter().enumerate().map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() }).collect();
    // coefficient of x^k in e^x Q(-x)
    let e_dual: Vec<Rational> = (0..=n as usize)
        .map(|k| (0..=k).map(|j| &dual[j] * &exp_series(n)[k - j]).sum())
        .collect();
    for r in [1, 3, 5] {
        let (lhs, rhs) = todd_duality_sides(&BundleSpec::new(r, n).unwrap()).unwrap();
        assert_eq!(lhs, multiplicative_root_expansion(q.coefficients(), r as usize, n), "lhs r = {r}");
        assert_eq!(rhs, multiplicative_root_expansion(&e_dual, r as usize, n), "rhs r = {r}");
    }
}

#[test]
fn power_sum_route_matches_root_oracle() {
    for n in 1..=8u32 {
        let q = MultiplicativeSequence::todd(n);
        let td = todd_class(&BundleSpec::universal(n)).unwrap();
        assert_eq!(td, multiplicative_root_expansion(q.coefficients(), n as usize, n), "Td at N = {n}");
        let ch = chern_character(&BundleSpec::universal(n)).unwrap();
        assert_eq!(ch, additive_root_expansion(&exp_series(n), n as usize, n), "ch at N = {n}");
    }
}

#[test]
fn whitney_multiplicativity() {
    for ra in 1..=3u32 {
        for rb in 1..=3u32 {
            for n in [4u32, 8] {
                let a = BundleSpec::new(ra, n).unwrap().total_chern();
                let b = mixed_total(rb, n);
                assert!(rb == 1 || b.component(rb).unwrap().len() > 1);
                let td_sum = todd_of_total_chern(&a.mul(&b).unwrap()).unwrap();
                let td_a = todd_of_total_chern(&a).unwrap();
                let td_b = todd_of_total_chern(&b).unwrap();
                assert_eq!(td_sum, td_a.mul(&td_b).unwrap(), "ranks {ra}, {rb}, N = {n}");
                let ch_sum = chern_character_of_total(&a.mul(&b).unwrap(), ra + rb).unwrap();
                let ch_a = chern_character_of_total(&a, ra).unwrap();
                let ch_b = chern_character_of_total(&b, rb).unwrap();
                assert_eq!(ch_sum, ch_a.checked_add(&ch_b).unwrap(), "ch ranks {ra}, {rb}, N = {n}");
            }
        }
    }
}

#[test]
fn hirzebruch_coefficients() {
    for i in 1..=8 {
        let report = verify_hirzebruch_coefficient(i, HIRZEBRUCH_DEFAULT_MAX_DEGREE).unwrap();
        assert!(report.holds, "{report:?}");
    }
    let first = verify_hirzebruch_coefficient(1, 16).unwrap();
    assert_eq!(first.expected, ratio(1, 12));
    assert_eq!(verify_hirzebruch_coefficient(2, 16).unwrap().expected, ratio(-1, 720));
    assert!(verify_hirzebruch_coefficient(9, 16).is_err());
}

#[test]
fn recursion_structure() {
    for i in 1..=8 {
        assert!(recursion_structure_holds(i).unwrap(), "i = {i}");
    }
}

#[test]
fn td24_c12_squared() {
    let at24 = todd_c12sq_coefficient_at(24).unwrap();
    let at26 = todd24_c12sq_coefficient().unwrap();
    assert_eq!(at24.coefficient, at26.coefficient);
    // In power sums Td = exp(sum s_k p_k); only s_24 p_24 and (s_12 p_12)^2 / 2
    // reach c_12^2, with [c_12^2] p_24 = 12 and [c_12^2] p_12^2 = 144.
    let s = |k: usize| -bernoulli(k).unwrap() / Rational::from_integer(BigInt::from(factorial(k as u64)) * BigInt::from(k));
    let closed = s(24) * rat(12) + s(12) * s(12) * rat(72);
    assert_eq!(at26.coefficient, closed);
    assert!(at26.nonzero);
    assert!(todd_c12sq_coefficient_at(20).is_err());
}

#[test]
fn td24_top_coefficient_anchor() {
    let td = todd_class(&BundleSpec::universal(24)).unwrap();
    let expected = bernoulli(24).unwrap() / Rational::from_integer(BigInt::from(factorial(24)));
    assert_eq!(td.coefficient(&ExponentVector::var_pow(24, 1)), expected);
}
