//! Property suites behind `chernorder verify`.
//!
//! Each suite returns one [`Check`] per property, carrying the first
//! counterexample when it fails. Suites are independent and `all` runs them
//! on separate threads; results come back in a fixed order.

use std::fmt;
use std::str::FromStr;
use std::thread;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{factorial, Rational};
use crate::bernoulli::{nk_cross_checked, nk_denominator, nk_formula, nk_gcd_sample, DEFAULT_GCD_PRIMES};
use crate::char_classes::roots::{additive_root_expansion, multiplicative_root_expansion};
use crate::char_classes::{
    chern_character, chern_from_newton, derham_chern_in_newton, derham_chern_lambda, derham_total_chern,
    newton_basis_to_chern, recursion_structure_holds, todd_class, todd_duality_sides, verify_hirzebruch_coefficient,
    verify_todd_det_duality, BundleSpec, CharClassError, MultiplicativeSequence,
};
use crate::graded_ring::GradedPoly;

/// `n_1, ..., n_14`.
pub const NK_TABLE: [u64; 14] = [24, 240, 504, 480, 264, 65520, 24, 16320, 28728, 13200, 552, 131040, 24, 6960];

/// Largest truncation the root-expansion oracle is run at.
pub const ORACLE_MAX_DEGREE: u32 = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Duality,
    OddVanishing,
    Hirzebruch,
    Nk,
    Newton,
    Oracle,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::Duality, Suite::OddVanishing, Suite::Hirzebruch, Suite::Nk, Suite::Newton, Suite::Oracle];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Duality => "duality",
            Suite::OddVanishing => "odd-vanishing",
            Suite::Hirzebruch => "hirzebruch",
            Suite::Nk => "nk",
            Suite::Newton => "newton",
            Suite::Oracle => "oracle",
        }
    }

    /// The degree bound used when none is given.
    pub fn default_max_degree(self) -> u32 {
        match self {
            Suite::Duality => 10,
            Suite::OddVanishing => 16,
            Suite::Hirzebruch => 16,
            Suite::Nk => 40,
            Suite::Newton => 10,
            Suite::Oracle => 8,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| VerifyError::UnknownSuite(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("--max-degree {value} is too large for suite {suite} (at most {max})")]
    DegreeTooLarge { suite: Suite, value: u32, max: u32 },
    #[error(transparent)]
    CharClass(#[from] CharClassError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub counterexample: Option<String>,
}

impl Check {
    fn new(suite: Suite, name: impl Into<String>, detail: impl Into<String>, counterexample: Option<String>) -> Self {
        Check { suite, name: name.into(), passed: counterexample.is_none(), detail: detail.into(), counterexample }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
    pub passed: bool,
}

/// Runs `suites` (every suite when empty) at `max_degree`, or each suite's
/// default.
pub fn run(suites: &[Suite], max_degree: Option<u32>) -> Result<VerifyReport, VerifyError> {
    let suites: Vec<Suite> = if suites.is_empty() { Suite::ALL.to_vec() } else { suites.to_vec() };
    for &s in &suites {
        if let (Suite::Oracle, Some(n)) = (s, max_degree) {
            if n > ORACLE_MAX_DEGREE {
                return Err(VerifyError::DegreeTooLarge { suite: s, value: n, max: ORACLE_MAX_DEGREE });
            }
        }
    }
    let results: Vec<Result<Vec<Check>, VerifyError>> = thread::scope(|scope| {
        let handles: Vec<_> = suites
            .iter()
            .map(|&s| scope.spawn(move || run_suite(s, max_degree.unwrap_or(s.default_max_degree()))))
            .collect();
        handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
    });
    let mut checks = Vec::new();
    for r in results {
        checks.extend(r?);
    }
    let passed = checks.iter().all(|c| c.passed);
    Ok(VerifyReport { checks, passed })
}

pub fn run_suite(suite: Suite, max_degree: u32) -> Result<Vec<Check>, VerifyError> {
    match suite {
        Suite::Duality => duality(max_degree),
        Suite::OddVanishing => odd_vanishing(max_degree),
        Suite::Hirzebruch => hirzebruch(max_degree),
        Suite::Nk => Ok(nk(max_degree)),
        Suite::Newton => newton(max_degree),
        Suite::Oracle => oracle(max_degree),
    }
}

fn duality(n: u32) -> Result<Vec<Check>, VerifyError> {
    let mut bad = None;
    'outer: for r in 1..=5 {
        for w in 1..=n {
            let report = verify_todd_det_duality(r, w)?;
            if !report.equal {
                bad = Some(format!("rank {r}, N = {w}: first difference at weight {:?}", report.first_difference));
                break 'outer;
            }
        }
    }
    Ok(vec![Check::new(Suite::Duality, "Td(E) = exp(c1) Td(E^dual)", format!("ranks 1..=5, N <= {n}"), bad)])
}

fn odd_vanishing(n: u32) -> Result<Vec<Check>, VerifyError> {
    let mut odd = None;
    let mut even = None;
    for g in 1..=8 {
        let c = derham_total_chern(g, n)?;
        if odd.is_none() {
            if let Some(w) = (1..=n).step_by(2).find(|&w| c.component(w).map(|x| !x.is_zero()).unwrap_or(true)) {
                odd = Some(format!("g = {g}: weight {w} part is {}", c.component(w).map(|x| x.to_text("c")).unwrap_or_default()));
            }
        }
        if even.is_none() && c.sign_involution() != c {
            even = Some(format!("g = {g}"));
        }
    }
    let detail = format!("g <= 8, weight <= {n}");
    Ok(vec![
        Check::new(Suite::OddVanishing, "odd parts of c(E) c(E^dual) vanish", detail.clone(), odd),
        Check::new(Suite::OddVanishing, "c(E) c(E^dual) is fixed by c_i -> (-1)^i c_i", detail, even),
    ])
}

fn hirzebruch(n: u32) -> Result<Vec<Check>, VerifyError> {
    let mut bad = None;
    let mut values = Vec::new();
    for i in 1..=n / 2 {
        let r = verify_hirzebruch_coefficient(i, n)?;
        values.push(format!("i={i}: {}", crate::graded_ring::format_rational(&r.expected)));
        if !r.holds && bad.is_none() {
            bad = Some(format!(
                "i = {i}: [c_{0}] = {1}, [c1^{0}] = {2}, B/(2i)! = {3}",
                2 * i,
                r.top_coefficient,
                r.c1_power_coefficient,
                r.expected
            ));
        }
    }
    let mut structure = None;
    for i in 1..=n / 2 {
        if !recursion_structure_holds(i)? {
            structure = Some(format!("i = {i}"));
            break;
        }
    }
    Ok(vec![
        Check::new(
            Suite::Hirzebruch,
            "[c_2i] Td_2i = [c1^2i] Td_2i = B_2i/(2i)! != 0",
            format!("2i <= {n}; {}", values.join(", ")),
            bad,
        ),
        Check::new(
            Suite::Hirzebruch,
            "every other monomial of Td_2i has some c_j with j <= i",
            format!("2i <= {n}"),
            structure,
        ),
    ])
}

fn nk(max_k: u32) -> Vec<Check> {
    let mut table = None;
    for (idx, &expected) in NK_TABLE.iter().enumerate() {
        let k = idx as u64 + 1;
        let e = BigUint::from(expected);
        let formula = nk_formula(k).map(|v| v.value.value().clone());
        let den = nk_denominator(k);
        let gcd = nk_gcd_sample(k, DEFAULT_GCD_PRIMES).map(|s| s.value);
        if formula.as_ref() != Ok(&e) || den.as_ref() != Ok(&e) || gcd.as_ref() != Ok(&e) {
            table = Some(format!("k = {k}: expected {expected}, got {formula:?} / {den:?} / {gcd:?}"));
            break;
        }
    }
    let mut agreement = None;
    for k in 1..=max_k as u64 {
        if let Err(e) = nk_cross_checked(k) {
            agreement = Some(e.to_string());
            break;
        }
    }
    vec![
        Check::new(Suite::Nk, "n_k table", format!("{0}/{0} rows match", NK_TABLE.len()), table),
        Check::new(
            Suite::Nk,
            "three-way n_k agreement",
            format!("formula = denominator of B_2k/(-4k) = gcd over {DEFAULT_GCD_PRIMES} primes, k <= {max_k}"),
            agreement,
        ),
    ]
}

fn newton_poly(s: &str, n: u32) -> GradedPoly {
    GradedPoly::parse_with_symbol(s, n, "N").expect("fixed formula parses")
}

/// `c_2(H), ..., c_8(H)` in the Newton classes.
pub const DERHAM_NEWTON_FORMULAS: [&str; 4] = [
    "-N2",
    "1/2*N2^2 - 1/2*N4",
    "-1/6*N2^3 + 1/2*N2*N4 - 1/3*N6",
    "1/24*N2^4 - 1/4*N2^2*N4 + 1/3*N2*N6 + 1/8*N4^2 - 1/4*N8",
];

fn newton(n: u32) -> Result<Vec<Check>, VerifyError> {
    let mut round = None;
    for k in 1..=n {
        let back = newton_basis_to_chern(&chern_from_newton(k, k)?, k)?;
        if back != GradedPoly::var(k, k) {
            round = Some(format!("k = {k}: got {}", back.to_text("c")));
            break;
        }
    }
    let mut formulas = None;
    for (idx, text) in DERHAM_NEWTON_FORMULAS.iter().enumerate() {
        let i = idx as u32 + 1;
        let got = derham_chern_in_newton(i, 4)?;
        if got != newton_poly(text, 2 * i) {
            formulas = Some(format!("c_{}(H) = {}", 2 * i, got.to_text("N")));
            break;
        }
    }
    let mut forms = None;
    'outer: for g in 1..=6 {
        for i in 1..=g {
            let lambda = derham_chern_lambda(i, g)?;
            let via = newton_basis_to_chern(&derham_chern_in_newton(i, g)?, g)?;
            if lambda != via {
                forms = Some(format!("g = {g}, i = {i}"));
                break 'outer;
            }
        }
    }
    Ok(vec![
        Check::new(Suite::Newton, "chern_from_newton then newton_from_chern is the identity", format!("k <= {n}"), round),
        Check::new(Suite::Newton, "c_2(H) .. c_8(H) in Newton classes", "four fixed formulas", formulas),
        Check::new(Suite::Newton, "Newton and lambda forms of c_2i(H) agree", "g <= 6", forms),
    ])
}

fn exp_series(n: u32) -> Vec<Rational> {
    (0..=n).map(|k| Rational::new(BigInt::one(), BigInt::from(factorial(k as u64)))).collect()
}

fn oracle(n: u32) -> Result<Vec<Check>, VerifyError> {
    let mut classes = None;
    for w in 1..=n {
        let q = MultiplicativeSequence::todd(w);
        let td = todd_class(&BundleSpec::universal(w))?;
        if td != multiplicative_root_expansion(q.coefficients(), w as usize, w) {
            classes = Some(format!("Td at N = {w}"));
            break;
        }
        let ch = chern_character(&BundleSpec::universal(w))?;
        if ch != additive_root_expansion(&exp_series(w), w as usize, w) {
            classes = Some(format!("ch at N = {w}"));
            break;
        }
    }
    // e^x Q(-x), the one-root form of exp(c1) Td(E^dual)
    let q = MultiplicativeSequence::todd(n);
    let dual: Vec<Rational> =
        q.coefficients().iter().enumerate().map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() }).collect();
    let e = exp_series(n);
    let twisted: Vec<Rational> = (0..=n as usize)
        .map(|k| (0..=k).fold(Rational::zero(), |acc, j| acc + &dual[j] * &e[k - j]))
        .collect();
    let mut sides = None;
    for r in 1..=n.min(5) {
        let (lhs, rhs) = todd_duality_sides(&BundleSpec::new(r, n)?)?;
        let oracle_lhs = multiplicative_root_expansion(q.coefficients(), r as usize, n);
        let oracle_rhs = multiplicative_root_expansion(&twisted, r as usize, n);
        if lhs != oracle_lhs || rhs != oracle_rhs {
            sides = Some(format!("rank {r}"));
            break;
        }
    }
    Ok(vec![
        Check::new(Suite::Oracle, "power-sum route equals root expansion for Td and ch", format!("N <= {n}"), classes),
        Check::new(Suite::Oracle, "both sides of the duality equal their root expansions", format!("ranks <= {}, N = {n}", n.min(5)), sides),
    ])
}
