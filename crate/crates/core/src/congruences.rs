//! Scans the nine congruence families for p_8 against computed values and
//! reports violations or certified ranges.
//!
//! Scans default to the mod-2^64 ring: every desk-scale modulus exponent is
//! far below 64, and word arithmetic keeps deep scans fast. The 2-adic
//! valuation of a failing coefficient is recomputed from an exact-integer
//! prefix, since the modular ring cannot certify valuations past 64.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::eta::p8_series;
use crate::ring::{Coeff, CoeffRing};
use crate::series::TruncSeries;
use crate::tables::{v2, Valuation};

/// Whether n = k(3k-1)/2 for some integer k; equivalently 24n+1 is a perfect
/// square (any such square is odd and prime to 3, hence of the form
/// (6k-1)^2).
pub fn is_gen_pentagonal(n: u64) -> bool {
    let d = 24u128 * u128::from(n) + 1;
    let s = d.isqrt();
    s * s == d
}

/// The only exception rule in the theorem: skip generalized pentagonal n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExceptionRule {
    GenPentagonal,
}

impl ExceptionRule {
    pub fn excludes(self, n: u64) -> bool {
        match self {
            ExceptionRule::GenPentagonal => is_gen_pentagonal(n),
        }
    }
}

/// One congruence family instantiated at a concrete alpha:
/// p_8(step * n + residue) = 0 mod 2^mod_exponent for all n not excluded.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceClaim {
    pub id: String,
    pub alpha: u32,
    pub step: u64,
    pub residue: u64,
    pub mod_exponent: u32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub exception: Option<ExceptionRule>,
}

impl CongruenceClaim {
    /// `numerator` is the displayed residue numerator, always divisible by 3;
    /// both that and residue < step are asserted at construction.
    fn new(
        id: &str,
        alpha: u32,
        step: u64,
        numerator: u64,
        mod_exponent: u32,
        exception: Option<ExceptionRule>,
    ) -> Self {
        assert_eq!(
            numerator % 3,
            0,
            "{id}: residue numerator {numerator} not divisible by 3"
        );
        let residue = numerator / 3;
        assert!(
            residue < step,
            "{id}: residue {residue} not below step {step}"
        );
        CongruenceClaim {
            id: id.to_string(),
            alpha,
            step,
            residue,
            mod_exponent,
            exception,
        }
    }
}

/// All families of the theorem at the given alpha. The alpha-independent
/// 2n+1 family is returned once, with alpha = 1.
pub fn claims_for(alpha: u32) -> Vec<CongruenceClaim> {
    assert!(alpha >= 1, "families are stated for alpha >= 1");
    assert!(alpha <= 20, "step 2^(2a+3) must fit in u64");
    let p = |e: u32| 2u64.pow(e);
    let mut claims = Vec::new();
    if alpha == 1 {
        claims.push(CongruenceClaim::new("E094", 1, 2, 3, 3, None));
    }
    claims.push(CongruenceClaim::new(
        "E095",
        alpha,
        p(2 * alpha),
        p(2 * alpha + 1) + 1,
        3 * alpha + 3,
        None,
    ));
    claims.push(CongruenceClaim::new(
        "E096",
        alpha,
        p(2 * alpha + 1),
        7 * p(2 * alpha - 1) + 1,
        3 * alpha + 2,
        None,
    ));
    claims.push(CongruenceClaim::new(
        "E097",
        alpha,
        p(2 * alpha + 1),
        5 * p(2 * alpha) + 1,
        3 * alpha + 8,
        None,
    ));
    claims.push(CongruenceClaim::new(
        "E098",
        alpha,
        p(2 * alpha + 2),
        13 * p(2 * alpha - 1) + 1,
        3 * alpha + 1,
        None,
    ));
    claims.push(CongruenceClaim::new(
        "E099",
        alpha,
        p(2 * alpha + 2),
        19 * p(2 * alpha - 1) + 1,
        3 * alpha + 3,
        None,
    ));
    claims.push(CongruenceClaim::new(
        "E100",
        alpha,
        p(2 * alpha + 2),
        11 * p(2 * alpha) + 1,
        3 * alpha + 10,
        None,
    ));
    claims.push(CongruenceClaim::new(
        "E101",
        alpha,
        p(2 * alpha + 3),
        17 * p(2 * alpha) + 1,
        3 * alpha + 9,
        None,
    ));
    claims.push(CongruenceClaim::new(
        "E102",
        alpha,
        p(2 * alpha + 2),
        p(2 * alpha - 1) + 1,
        3 * alpha + 1,
        Some(ExceptionRule::GenPentagonal),
    ));
    claims
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// The first violation found by a scan. `v2_found` is the exact 2-adic
/// valuation of p_8(argument), recomputed over exact integers; it is omitted
/// when the argument is too deep to recompute exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub n: u64,
    pub argument: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub v2_found: Option<u64>,
}

/// Outcome of scanning one claim.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanResult {
    pub id: String,
    pub alpha: u32,
    pub n_max: u64,
    /// Effective range actually scanned; below `n_max` only when the
    /// available series order forced a degrade (see `note`).
    pub n_scanned: u64,
    pub ring: CoeffRing,
    pub mod_exponent: u32,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<Counterexample>,
    /// n values skipped by the claim's exception predicate.
    pub skipped: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScanError {
    #[error("{id}: first argument {argument} already exceeds series order {order}")]
    OrderOverflow {
        id: String,
        argument: u64,
        order: usize,
    },
    #[error("{id}: modulus 2^{e} is not decidable in the mod-2^64 ring")]
    ModulusTooLarge { id: String, e: u32 },
}

/// Deepest argument index beyond which a failing coefficient is not
/// recomputed exactly for its valuation.
const EXACT_RECHECK_LIMIT: u64 = 50_000;

/// Scans one claim for n = 0..=n_max against a precomputed p_8 prefix.
///
/// If the prefix is too short for the full range, the scan degrades to the
/// representable range and says so in the result's note. `exceptions`
/// disables the exception predicate when false (every n is then checked,
/// which for the pentagonal family is expected to fail).
pub fn scan_claim<C: Coeff>(
    claim: &CongruenceClaim,
    n_max: u64,
    p8: &TruncSeries<C>,
    exceptions: bool,
) -> Result<ScanResult, ScanError> {
    if let Some(max) = C::max_two_exponent() {
        if claim.mod_exponent > max {
            return Err(ScanError::ModulusTooLarge {
                id: claim.id.clone(),
                e: claim.mod_exponent,
            });
        }
    }
    let order = p8.order() as u64;
    if claim.residue > order {
        return Err(ScanError::OrderOverflow {
            id: claim.id.clone(),
            argument: claim.residue,
            order: p8.order(),
        });
    }
    let representable = (order - claim.residue) / claim.step;
    let n_scanned = n_max.min(representable);
    let note = (n_scanned < n_max).then(|| {
        format!("degraded to n <= {n_scanned}: series order {order} caps the argument range")
    });

    let mut skipped = Vec::new();
    let mut counterexample = None;
    for n in 0..=n_scanned {
        if exceptions {
            if let Some(rule) = claim.exception {
                if rule.excludes(n) {
                    skipped.push(n);
                    continue;
                }
            }
        }
        let argument = claim.step * n + claim.residue;
        if !p8.coeff(argument as usize).two_divides(claim.mod_exponent) {
            counterexample = Some(Counterexample {
                n,
                argument,
                v2_found: exact_valuation(argument),
            });
            break;
        }
    }
    Ok(ScanResult {
        id: claim.id.clone(),
        alpha: claim.alpha,
        n_max,
        n_scanned,
        ring: C::RING,
        mod_exponent: claim.mod_exponent,
        verdict: if counterexample.is_none() {
            Verdict::Pass
        } else {
            Verdict::Fail
        },
        counterexample,
        skipped,
        note,
    })
}

fn exact_valuation(argument: u64) -> Option<u64> {
    if argument > EXACT_RECHECK_LIMIT {
        return None;
    }
    let exact = p8_series::<BigInt>(argument as usize);
    match v2(exact.coeff(argument as usize)) {
        Valuation::Finite(t) => Some(t),
        Valuation::Infinite => None,
    }
}

/// Scans every family at every alpha <= alpha_max, sharing one read-only
/// p_8 prefix sized for the deepest argument requested.
pub fn scan_all<C: Coeff>(
    alpha_max: u32,
    n_max: u64,
    exceptions: bool,
) -> Result<Vec<ScanResult>, ScanError> {
    assert!(alpha_max >= 1);
    let claims: Vec<CongruenceClaim> = (1..=alpha_max).flat_map(claims_for).collect();
    let deepest = claims
        .iter()
        .map(|c| c.step * n_max + c.residue)
        .max()
        .expect("at least one claim");
    let p8 = p8_series::<C>(deepest as usize);
    claims
        .iter()
        .map(|claim| scan_claim(claim, n_max, &p8, exceptions))
        .collect()
}
