//! Euler products, eta-quotient formulas, and the 8-colour partition series.
//!
//! `f_k` denotes the product over j >= 1 of (1 - q^{kj}); every identity this
//! crate verifies is built from a handful of such factors, a power of q, and
//! an integer coefficient. Displayed identities live in a bundled JSON
//! registry (see [`registry`]) so that verification is data-driven.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::report::CheckMode;
use crate::ring::Coeff;
use crate::series::TruncSeries;

/// The Euler product f_1 to the given order, by the pentagonal number
/// theorem: sum over all integers k of (-1)^k q^{k(3k-1)/2}. Only O(sqrt N)
/// terms land inside the truncation window.
pub fn euler_f1<C: Coeff>(order: usize) -> TruncSeries<C> {
    let mut coeffs = vec![C::zero(); order + 1];
    coeffs[0] = C::one();
    for k in 1u64.. {
        // k(3k-1)/2 for k and -k; both are exhausted once the smaller passes N.
        let lower = k * (3 * k - 1) / 2;
        let upper = k * (3 * k + 1) / 2;
        if lower > order as u64 {
            break;
        }
        let sign = if k % 2 == 0 { C::one() } else { C::one().neg() };
        coeffs[lower as usize] = sign.clone();
        if upper <= order as u64 {
            coeffs[upper as usize] = sign;
        }
    }
    TruncSeries::from_coeffs(coeffs)
}

/// f_k = f_1 evaluated at q^k, truncated to the given order.
pub fn euler_fk<C: Coeff>(k: u32, order: usize) -> TruncSeries<C> {
    assert!(k >= 1, "Euler product index must be positive");
    let k = k as usize;
    if k == 1 {
        return euler_f1(order);
    }
    euler_f1::<C>(order / k)
        .substitute_power(k)
        .truncated(order)
}

/// One eta-quotient monomial: coeff * q^qshift * prod over (k, e) of f_k^e.
///
/// All f_k have unit constant term, so negative exponents are legal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EtaTerm {
    #[serde(with = "bigint_decimal")]
    pub coeff: BigInt,
    #[serde(default)]
    pub qshift: usize,
    #[serde(default)]
    pub factors: BTreeMap<u32, i64>,
}

impl EtaTerm {
    pub fn new(coeff: impl Into<BigInt>, qshift: usize, factors: &[(u32, i64)]) -> Self {
        let term = EtaTerm {
            coeff: coeff.into(),
            qshift,
            factors: factors.iter().copied().collect(),
        };
        assert!(
            term.factors.values().all(|&e| e != 0),
            "eta factors must have nonzero exponents"
        );
        term
    }

    /// Evaluates the term to the given truncation order.
    ///
    /// Each factor is applied one power at a time as a sparse multiply or
    /// divide, which keeps the cost at O(order * sqrt(order)) per power and
    /// the intermediate coefficients small.
    pub fn eval<C: Coeff>(&self, order: usize) -> TruncSeries<C> {
        let mut acc = TruncSeries::constant(C::from_bigint(&self.coeff), order);
        for (&k, &e) in &self.factors {
            let fk = euler_fk::<C>(k, order);
            for _ in 0..e.unsigned_abs() {
                if e > 0 {
                    acc = acc.mul(&fk);
                } else {
                    acc = acc.div(&fk).expect("f_k has unit constant term");
                }
            }
        }
        acc.shift(self.qshift as i64)
            .expect("non-negative shift cannot fail")
            .truncated(order)
    }
}

/// A formal sum of eta-quotient terms; the empty list is the zero formula.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EtaFormula {
    pub terms: Vec<EtaTerm>,
}

impl EtaFormula {
    pub fn new(terms: Vec<EtaTerm>) -> Self {
        EtaFormula { terms }
    }
}

/// Evaluates a formula as the sum of its term evaluations.
pub fn eval_formula<C: Coeff>(formula: &EtaFormula, order: usize) -> TruncSeries<C> {
    let mut acc = TruncSeries::zero(order);
    for term in &formula.terms {
        acc = acc.add(&term.eval(order));
    }
    acc
}

/// The 8-colour partition generating series 1/f_1^8: coefficient n is p_8(n).
pub fn p8_series<C: Coeff>(order: usize) -> TruncSeries<C> {
    let f1 = euler_f1::<C>(order);
    let mut acc = TruncSeries::one(order);
    for _ in 0..8 {
        acc = acc.div(&f1).expect("f_1 has constant term 1");
    }
    acc
}

/// Counts 8-colour partitions of 0..=n_max by dynamic programming, with no
/// series machinery: each (part size, colour) pair is an unbounded knapsack
/// item. This is the independent oracle for [`p8_series`].
pub fn p8_oracle(n_max: usize) -> Vec<BigInt> {
    let mut dp = vec![BigInt::from(0); n_max + 1];
    dp[0] = BigInt::from(1);
    for part in 1..=n_max {
        for _colour in 0..8 {
            for n in part..=n_max {
                let (head, tail) = dp.split_at_mut(n);
                tail[0] += &head[n - part];
            }
        }
    }
    dp
}

/// One side of a registered identity: an eta formula, optionally followed by
/// arithmetic-progression extraction (for left sides like "the coefficients
/// of q^{4n+3} in 1/f_1^8").
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentitySide {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub extract: Option<Extraction>,
    pub terms: EtaFormula,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Extraction {
    pub step: usize,
    pub residue: usize,
}

impl IdentitySide {
    /// Evaluates the side to the given order. A side with extraction is
    /// expanded to order step*order + residue first, so the extracted series
    /// is valid to the full requested order.
    pub fn eval<C: Coeff>(&self, order: usize) -> TruncSeries<C> {
        match self.extract {
            None => eval_formula(&self.terms, order),
            Some(Extraction { step, residue }) => {
                eval_formula::<C>(&self.terms, step * order + residue).extract_ap(step, residue)
            }
        }
    }
}

/// A displayed identity: unique tag, comparison mode, and the two sides.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCase {
    pub tag: String,
    pub mode: CheckMode,
    pub lhs: IdentitySide,
    pub rhs: IdentitySide,
}

/// The bundled identity registry.
///
/// Schema (JSON array, one object per identity):
/// - `tag`: unique string identifier.
/// - `mode`: `{"type": "exact"}` or `{"type": "mod2", "e": <u32>}`.
/// - `lhs`, `rhs`: `{"extract"?: {"step", "residue"}, "terms": [term...]}`
///   where each term is `{"coeff": "<decimal>", "qshift": <usize>,
///   "factors": {"<k>": <exponent>, ...}}`.
pub fn registry() -> &'static [IdentityCase] {
    static REGISTRY: OnceLock<Vec<IdentityCase>> = OnceLock::new();
    REGISTRY.get_or_init(|| {
        let raw = include_str!("../data/registry.json");
        let cases: Vec<IdentityCase> =
            serde_json::from_str(raw).expect("bundled registry must parse");
        for case in &cases {
            for side in [&case.lhs, &case.rhs] {
                for term in &side.terms.terms {
                    assert!(
                        term.factors.values().all(|&e| e != 0),
                        "registry term in {} has a zero exponent",
                        case.tag
                    );
                }
            }
        }
        cases
    })
}

/// Looks up a registered identity by tag.
pub fn registry_case(tag: &str) -> Option<&'static IdentityCase> {
    registry().iter().find(|c| c.tag == tag)
}

mod bigint_decimal {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};
    use std::str::FromStr;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let raw = String::deserialize(d)?;
        BigInt::from_str(&raw).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::M64;

    type ZSeries = TruncSeries<BigInt>;

    /// Direct product oracle: expand prod_{j=1..N} (1 - q^j) term by term.
    fn euler_product_oracle(order: usize) -> ZSeries {
        let mut acc = ZSeries::one(order);
        for j in 1..=order {
            let mut factor = vec![0i64; order + 1];
            factor[0] = 1;
            factor[j] = -1;
            acc = acc.mul(&ZSeries::from_i64_coeffs(&factor));
        }
        acc
    }

    #[test]
    fn euler_f1_matches_pentagonal_expansion() {
        let f1: ZSeries = euler_f1(12);
        let expected = ZSeries::from_i64_coeffs(&[1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1]);
        assert_eq!(f1, expected);
        assert_eq!(f1.coeff(3), &BigInt::from(0));
    }

    #[test]
    fn euler_f1_matches_product_oracle() {
        let by_theorem: ZSeries = euler_f1(300);
        assert_eq!(by_theorem, euler_product_oracle(300));
    }

    #[test]
    fn euler_f1_coefficients_are_signs_on_pentagonal_support() {
        let f1: ZSeries = euler_f1(500);
        let pentagonal: Vec<usize> = {
            let mut v = vec![0usize];
            for k in 1i64..=20 {
                v.push((k * (3 * k - 1) / 2) as usize);
                v.push((k * (3 * k + 1) / 2) as usize);
            }
            v.retain(|&n| n <= 500);
            v
        };
        for n in 0..=500 {
            let c = f1.coeff(n);
            if pentagonal.contains(&n) {
                assert!(
                    c == &BigInt::from(1) || c == &BigInt::from(-1),
                    "coefficient {n} should be a sign, got {c}"
                );
            } else {
                assert_eq!(
                    c,
                    &BigInt::from(0),
                    "coefficient {n} off pentagonal support"
                );
            }
        }
    }

    #[test]
    fn euler_fk_reindexes_f1() {
        let f1: ZSeries = euler_f1(20);
        assert_eq!(euler_fk::<BigInt>(1, 20), f1);

        let f2: ZSeries = euler_fk(2, 14);
        let expected = ZSeries::from_i64_coeffs(&[1, 0, -1, 0, -1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1]);
        assert_eq!(f2, expected);

        let f4: ZSeries = euler_fk(4, 200);
        for n in 0..=200 {
            if n % 4 != 0 {
                assert_eq!(f4.coeff(n), &BigInt::from(0), "f_4 support at {n}");
            }
        }
    }

    #[test]
    fn eval_formula_single_term_is_euler_f1() {
        let formula = EtaFormula::new(vec![EtaTerm::new(1, 0, &[(1, 1)])]);
        let lhs: ZSeries = eval_formula(&formula, 50);
        assert_eq!(lhs, euler_f1(50));
    }

    #[test]
    fn registry_sides_of_quartic_dissections_agree_with_pow() {
        // E6's left side is f_1^4 and E7's is 1/f_1^4; evaluating the right
        // sides must reproduce those directly computed powers.
        let f1: ZSeries = euler_f1(200);
        let e6 = registry_case("E6").unwrap();
        assert_eq!(e6.lhs.eval::<BigInt>(200), f1.pow(4).unwrap());
        assert_eq!(
            e6.rhs
                .eval::<BigInt>(200)
                .first_mismatch(&f1.pow(4).unwrap()),
            None
        );

        let e7 = registry_case("E7").unwrap();
        assert_eq!(
            e7.rhs
                .eval::<BigInt>(200)
                .first_mismatch(&f1.pow(-4).unwrap()),
            None
        );
    }

    #[test]
    fn eval_formula_distributes_over_term_concatenation() {
        let e1 = registry_case("E1").unwrap();
        let all: ZSeries = eval_formula(&e1.rhs.terms, 80);
        let mut sum = ZSeries::zero(80);
        for term in &e1.rhs.terms.terms {
            sum = sum.add(&eval_formula(&EtaFormula::new(vec![term.clone()]), 80));
        }
        assert_eq!(all, sum);
    }

    #[test]
    fn p8_series_spot_values() {
        let p8: ZSeries = p8_series(10);
        assert_eq!(p8.coeff(0), &BigInt::from(1));
        assert_eq!(p8.coeff(1), &BigInt::from(8));
        assert_eq!(p8.coeff(3), &BigInt::from(192));
    }

    #[test]
    fn p8_oracle_small_values_by_hand() {
        // p_8(2) = 44: eight colourings of a single 2, plus C(8,2) + 8 = 36
        // multisets of two coloured 1s.
        let oracle = p8_oracle(3);
        let values: Vec<i64> = oracle.iter().map(|c| i64::try_from(c).unwrap()).collect();
        assert_eq!(values, [1, 8, 44, 192]);
    }

    #[test]
    fn p8_series_agrees_with_oracle() {
        let p8: ZSeries = p8_series(300);
        assert_eq!(p8.coeffs(), &p8_oracle(300)[..]);
    }

    #[test]
    fn p8_series_mod64_is_reduction_of_exact() {
        let exact: ZSeries = p8_series(200);
        let modular: TruncSeries<M64> = p8_series(200);
        for n in 0..=200 {
            assert_eq!(
                M64::from_bigint(exact.coeff(n)),
                *modular.coeff(n),
                "p_8({n})"
            );
        }
    }

    #[test]
    fn binomial_squaring_congruence_smallest_case() {
        // f_1^2 == f_2 mod 2, the m = 1 seed of the binomial-theorem family.
        let f1_sq: ZSeries = euler_f1::<BigInt>(300).pow(2).unwrap();
        let f2: ZSeries = euler_fk(2, 300);
        assert_eq!(f1_sq.first_incongruence(&f2, 1).unwrap(), None);
    }

    #[test]
    fn registry_loads_with_unique_tags() {
        let tags: Vec<&str> = registry().iter().map(|c| c.tag.as_str()).collect();
        let mut dedup = tags.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(tags.len(), dedup.len(), "registry tags must be unique");
        assert!(registry_case("E020").is_some());
        assert!(registry_case("BOGUS").is_none());
    }

    #[test]
    fn registry_round_trips_through_json() {
        let cases = registry();
        let json = serde_json::to_string(cases).unwrap();
        let back: Vec<IdentityCase> = serde_json::from_str(&json).unwrap();
        assert_eq!(&back[..], cases);
    }
}
