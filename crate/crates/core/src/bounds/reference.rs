//! A published worked example for `g = 13`, `d = 91`, kept as a comparison
//! fixture next to the strict ledger.
//!
//! The example inverts `105!` although `2g + d + 1 = 118`; no prime
//! dividing a relevant numerator lies in `(105, 118]`, so nothing changes.
//! From `c_14(H)` on, the listed numerators are those of `B_{2i+2}` rather
//! than `B_{2i}`, and the top-class divisor is written with `n_12` where
//! `(g - 1)! n_g` has `n_13`. Nothing here feeds back into the ledger.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::{build_ledger, factorial_times_nk, BoundsError, Context, Ledger};
use crate::arith::{abs_numerator, factor, FactoredInt};
use crate::bernoulli::bernoulli;

pub const REFERENCE_G: u32 = 13;
pub const REFERENCE_D: u64 = 91;
pub const LISTED_THRESHOLD: u64 = 105;

/// `(i, numerator listed against c_{2i}(H), its listed prime factors)`.
pub const LISTED_PAIRINGS: [(u32, u64, &[u64]); 6] = [
    (6, 691, &[691]),
    (7, 3617, &[3617]),
    (8, 43867, &[43867]),
    (9, 174611, &[283, 617]),
    (10, 854513, &[11, 131, 593]),
    (11, 236364091, &[103, 2294797]),
];

/// `(Bernoulli index as listed, numerator, factors)` for the two numerators
/// quoted with an explicit index, discussed against `c_24(H)` and `c_26(H)`.
pub const LISTED_INDEXED: [(u32, u32, u64, &[u64]); 2] =
    [(12, 24, 8553103, &[13, 657931]), (13, 26, 23749461029, &[7, 9349, 362903])];

/// Primes listed as possible divisors of the order of `c_26(H)` before the
/// top-class argument.
pub const LISTED_TOP_CANDIDATES: [u64; 4] = [691, 3617, 9349, 362903];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub i: u32,
    #[serde(with = "crate::arith::biguint_string")]
    pub listed_numerator: BigUint,
    /// The Bernoulli index stated alongside the numerator, if any.
    pub listed_index: Option<u32>,
    /// The even index `n` with `num(B_n)` equal to the listed numerator.
    pub actual_index: Option<u32>,
    pub listed_factors: Vec<u64>,
    /// Whether the listed factorization multiplies out and is prime-wise correct.
    pub factorization_correct: bool,
    #[serde(with = "crate::arith::biguint_string")]
    pub strict_numerator: BigUint,
    pub strict_annihilator: FactoredInt,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopClassComparison {
    pub listed_formula: String,
    pub listed_value: FactoredInt,
    pub listed_closed_form: String,
    pub listed_closed_form_correct: bool,
    pub theorem_formula: String,
    pub theorem_value: FactoredInt,
    pub conflict: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    pub listed_threshold: u64,
    pub threshold: u64,
    /// Whether the strict annihilators are the same at the listed threshold.
    pub threshold_immaterial: bool,
    pub rows: Vec<ComparisonRow>,
    pub top_candidates: Vec<u64>,
    pub top_class: TopClassComparison,
}

/// The fixture applies to this context only.
pub fn applies_to(ledger: &Ledger) -> bool {
    ledger.context.g == REFERENCE_G && ledger.context.d == REFERENCE_D
}

fn index_of_numerator(num: &BigUint) -> Result<Option<u32>, BoundsError> {
    for n in (2..=60).step_by(2) {
        if abs_numerator(&bernoulli(n)?) == *num {
            return Ok(Some(n as u32));
        }
    }
    Ok(None)
}

pub fn compare(ledger: &Ledger) -> Result<Comparison, BoundsError> {
    if !applies_to(ledger) {
        return Err(BoundsError::InvalidContext(format!(
            "the comparison fixture only covers g = {REFERENCE_G}, d = {REFERENCE_D}"
        )));
    }
    let listed = LISTED_PAIRINGS
        .iter()
        .map(|&(i, n, f)| (i, n, None, f))
        .chain(LISTED_INDEXED.iter().map(|&(i, idx, n, f)| (i, n, Some(idx), f)));
    let mut rows = Vec::new();
    for (i, n, listed_index, factors) in listed {
        let listed_numerator = BigUint::from(n);
        let fac = factor(&listed_numerator)?;
        let listed_fac = FactoredInt::from_factors(factors.iter().map(|&p| (BigUint::from(p), 1)).collect())?;
        let entry = ledger.entry(i).expect("ledger covers 1..=g");
        let strict_numerator = abs_numerator(&bernoulli(2 * i as usize)?);
        rows.push(ComparisonRow {
            i,
            actual_index: index_of_numerator(&listed_numerator)?,
            listed_index,
            listed_factors: factors.to_vec(),
            factorization_correct: fac == listed_fac,
            agrees: listed_numerator == strict_numerator,
            listed_numerator,
            strict_numerator,
            strict_annihilator: entry.annihilator.clone(),
        });
    }

    let g = ledger.context.g;
    let listed_value = factorial_times_nk(g, g - 1)?;
    let theorem_value = factorial_times_nk(g, g)?;
    // 2^5 · 3^2 · 5 · 7 · 13!
    let small = [(2u32, 5), (3, 2), (5, 1), (7, 1)].iter().map(|&(p, e)| (BigUint::from(p), e)).collect();
    let closed = FactoredInt::from_factors(small)?.mul(&factorial_factored(13)?);
    let top_class = TopClassComparison {
        listed_formula: format!("{}!*n_{}", g - 1, g - 1),
        listed_closed_form: "2^5*3^2*5*7*13!".into(),
        listed_closed_form_correct: closed == listed_value,
        theorem_formula: format!("{}!*n_{}", g - 1, g),
        conflict: listed_value != theorem_value,
        listed_value,
        theorem_value,
    };
    let low = Context::new(g, Some(LISTED_THRESHOLD - 2 * g as u64 - 1), ledger.context.char_p, None)?;
    let low_ledger = build_ledger(&low)?;
    let threshold_immaterial =
        low_ledger.entries.iter().zip(&ledger.entries).all(|(a, b)| a.annihilator == b.annihilator);
    Ok(Comparison {
        listed_threshold: LISTED_THRESHOLD,
        threshold: ledger.context.threshold,
        threshold_immaterial,
        rows,
        top_candidates: LISTED_TOP_CANDIDATES.to_vec(),
        top_class,
    })
}

fn factorial_factored(n: u64) -> Result<FactoredInt, BoundsError> {
    let mut acc = FactoredInt::one();
    for m in 2..=n {
        acc = acc.mul(&factor(&BigUint::from(m))?);
    }
    Ok(acc)
}
