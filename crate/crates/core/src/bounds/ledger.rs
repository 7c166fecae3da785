use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::{
    bernoulli_set, combined_char_p_bound, evdg_order_candidates, evdg_top_class_bound, fzip_factorization,
    lambda_todd_bound, mr_quantity, BoundsError, Context, NumeratorCache, OrderCondition,
};
use crate::arith::{abs_numerator, factor_partial, int_valuation, FactorLimits, FactoredInt};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mechanism {
    LambdaTodd,
    Fzip,
    EvdgTop,
}

/// `v_ℓ(order of c_{2i}(H)) <= bound`, with each mechanism's own value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeBound {
    #[serde(with = "crate::arith::biguint_string")]
    pub ell: BigUint,
    pub bound: u32,
    /// The mechanism attaining the minimum.
    pub source: Mechanism,
    pub lambda_todd: u32,
    pub fzip: Option<u32>,
    pub evdg_top: Option<u32>,
    pub order_condition: Option<OrderCondition>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FzipColumn {
    pub p: u64,
    #[serde(with = "crate::arith::biguint_string")]
    pub value: BigUint,
    /// The certified prime part of `p^{2i} - 1`.
    pub factors: FactoredInt,
    /// Composite cofactors left after the effort cap, as decimal strings.
    pub composites: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvdgColumn {
    /// `[n_i, n_i / 2]`.
    pub candidates: [FactoredInt; 2],
    /// `(g - 1)! · n_g`, on the top class only.
    pub top_class: Option<FactoredInt>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MrBound {
    #[serde(with = "crate::arith::biguint_string")]
    pub ell: BigUint,
    pub bound: u32,
}

/// A composite that could not be split within the effort cap.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Unfactored {
    pub source: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundEntry {
    pub i: u32,
    pub bernoulli_indices: Vec<u32>,
    pub primes: Vec<PrimeBound>,
    /// `prod ℓ^bound` over `primes`.
    pub annihilator: FactoredInt,
    pub fzip: Option<FzipColumn>,
    pub evdg: EvdgColumn,
    /// Present in characteristic 0 only.
    pub mr: Option<Vec<MrBound>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub unfactored: Vec<Unfactored>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Note {
    pub code: String,
    pub i: Option<u32>,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ledger {
    pub context: Context,
    pub entries: Vec<BoundEntry>,
    pub notes: Vec<Note>,
}

impl Ledger {
    pub fn entry(&self, i: u32) -> Option<&BoundEntry> {
        self.entries.get(i.checked_sub(1)? as usize)
    }
}

pub fn build_ledger(ctx: &Context) -> Result<Ledger, BoundsError> {
    build_ledger_with(ctx, FactorLimits::default())
}

/// The ledger for `c_2(H), ..., c_{2g}(H)`, with `limits` applied to every
/// factorization.
pub fn build_ledger_with(ctx: &Context, limits: FactorLimits) -> Result<Ledger, BoundsError> {
    let ctx = Context::new(ctx.g, Some(ctx.d), ctx.char_p, ctx.level_n)?;
    let mut numerators = NumeratorCache::new(limits);
    let mut notes = Vec::new();
    let mut entries = Vec::with_capacity(ctx.g as usize);
    let threshold = BigUint::from(ctx.threshold);
    let top = evdg_top_class_bound(ctx.g)?;

    for i in 1..=ctx.g {
        let indices = bernoulli_set(i);
        let mut unfactored = Vec::new();
        let mut candidates: BTreeSet<BigUint> = BTreeSet::new();
        for &n in &indices {
            let part = numerators.get(n)?;
            candidates.extend(part.primes.factors().keys().filter(|&q| *q > threshold).cloned());
            unfactored.extend(part.composites.iter().map(|c| Unfactored { source: format!("num(B_{n})"), value: c.to_string() }));
        }

        let fzip = match ctx.char_p {
            None => None,
            Some(p) => {
                let pb = BigUint::from(p);
                let part = fzip_factorization(&pb, i, limits)?;
                candidates.extend(part.primes.factors().keys().filter(|&q| *q > threshold).cloned());
                let composites: Vec<String> = part.composites.iter().map(|c| c.to_string()).collect();
                unfactored.extend(composites.iter().map(|c| Unfactored { source: format!("{p}^{} - 1", 2 * i), value: c.clone() }));
                Some(FzipColumn { p, value: pb.pow(2 * i) - 1u32, factors: part.primes, composites })
            }
        };

        let is_top = i == ctx.g;
        let mut primes = Vec::with_capacity(candidates.len());
        for ell in candidates {
            primes.push(prime_bound(&ctx, i, ell, is_top.then_some(&top))?);
        }
        let annihilator = FactoredInt::from_factors(primes.iter().map(|b| (b.ell.clone(), b.bound)).collect())?;

        let mr = match ctx.char_p {
            Some(_) => None,
            None => {
                let num = abs_numerator(&mr_quantity(i)?);
                let part = factor_partial(&num, limits)?;
                unfactored.extend(part.composites.iter().map(|c| Unfactored {
                    source: format!("num((2^{0} - 1) B_{0})", 2 * i),
                    value: c.to_string(),
                }));
                let two_i = BigUint::from(2 * i);
                Some(
                    part.primes
                        .factors()
                        .iter()
                        .filter(|(q, _)| **q > two_i)
                        .map(|(q, &e)| MrBound { ell: q.clone(), bound: e })
                        .collect(),
                )
            }
        };

        if !unfactored.is_empty() {
            notes.push(Note {
                code: "incomplete-factorization".into(),
                i: Some(i),
                text: format!(
                    "{} cofactor(s) were not split within the effort cap; their prime factors are missing from the bounds",
                    unfactored.len()
                ),
            });
        }

        let evdg = EvdgColumn { candidates: evdg_order_candidates(i)?, top_class: is_top.then(|| top.clone()) };
        entries.push(BoundEntry { i, bernoulli_indices: indices, primes, annihilator, fzip, evdg, mr, unfactored });
    }

    let top_entry = &entries[ctx.g as usize - 1];
    let suppressed: Vec<String> = top_entry
        .primes
        .iter()
        .filter(|b| b.source == Mechanism::EvdgTop && b.lambda_todd > b.bound)
        .map(|b| b.ell.to_string())
        .collect();
    notes.push(Note {
        code: "top-class".into(),
        i: Some(ctx.g),
        text: if suppressed.is_empty() {
            format!("c_{}(H) is the top class; its order divides {}", 2 * ctx.g, top.compact())
        } else {
            format!(
                "c_{}(H) is the top class; its order divides {}, which removes {}",
                2 * ctx.g,
                top.compact(),
                suppressed.join(", ")
            )
        },
    });
    if ctx.char_p.is_some() {
        notes.push(Note {
            code: "mr-omitted".into(),
            i: None,
            text: "the numerator bound on N_{2i}(E) is stated over the complex numbers and is omitted in positive characteristic".into(),
        });
    }
    Ok(Ledger { context: ctx, entries, notes })
}

fn prime_bound(ctx: &Context, i: u32, ell: BigUint, top: Option<&FactoredInt>) -> Result<PrimeBound, BoundsError> {
    let lambda_todd = lambda_todd_bound(ctx, i, &ell)?;
    let (fzip, order_condition) = match ctx.char_p {
        None => (None, None),
        // (p^{2i} - 1) c_{2i} = 0 leaves no p-part at all.
        Some(p) if ell == BigUint::from(p) => (Some(0), None),
        Some(_) => {
            let c = combined_char_p_bound(ctx, i, &ell)?;
            (Some(c.fzip), Some(c.condition))
        }
    };
    let evdg_top = top.map(|t| int_valuation(t.value(), &ell) as u32);
    let mut bound = lambda_todd;
    let mut source = Mechanism::LambdaTodd;
    for (candidate, mechanism) in [(fzip, Mechanism::Fzip), (evdg_top, Mechanism::EvdgTop)] {
        if let Some(v) = candidate {
            if v < bound {
                bound = v;
                source = mechanism;
            }
        }
    }
    Ok(PrimeBound { ell, bound, source, lambda_todd, fzip, evdg_top, order_condition })
}

/// Rebuilds `prod ℓ^bound` from an entry's prime list.
pub fn reconstruct_annihilator(entry: &BoundEntry) -> BigUint {
    entry.primes.iter().fold(BigUint::one(), |acc, b| acc * b.ell.pow(b.bound))
}
