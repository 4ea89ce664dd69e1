//! Property tests: ring axioms over random series, operator laws for the
//! dissection machinery, and exactness of the mod-2^64 fast path against the
//! exact-integer ring for every operation.

use num_bigint::BigInt;
use p8series::{Coeff, TruncSeries, M64};
use proptest::prelude::*;

type Z = TruncSeries<BigInt>;
type M = TruncSeries<M64>;

fn z(v: &[i64]) -> Z {
    TruncSeries::from_i64_coeffs(v)
}

fn reduce(a: &Z) -> M {
    TruncSeries::from_coeffs(a.coeffs().iter().map(M64::from_bigint).collect())
}

fn series_coeffs(order: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(any::<i64>(), order + 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn addition_commutes_and_associates(
        a in series_coeffs(100), b in series_coeffs(100), c in series_coeffs(100)
    ) {
        let (a, b, c) = (z(&a), z(&b), z(&c));
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
    }

    #[test]
    fn multiplication_commutes(a in series_coeffs(100), b in series_coeffs(100)) {
        let (a, b) = (z(&a), z(&b));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn multiplication_associates(
        a in series_coeffs(40), b in series_coeffs(40), c in series_coeffs(40)
    ) {
        let (a, b, c) = (z(&a), z(&b), z(&c));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn multiplication_distributes_over_addition(
        a in series_coeffs(60), b in series_coeffs(60), c in series_coeffs(60)
    ) {
        let (a, b, c) = (z(&a), z(&b), z(&c));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn inverse_is_two_sided(mut v in series_coeffs(100), negative in any::<bool>()) {
        v[0] = if negative { -1 } else { 1 };
        let a = z(&v);
        let inv = a.invert().unwrap();
        prop_assert_eq!(a.mul(&inv), Z::one(100));
        prop_assert_eq!(inv.mul(&a), Z::one(100));
    }

    #[test]
    fn huff_even_is_linear_and_idempotent(a in series_coeffs(100), b in series_coeffs(100)) {
        let (a, b) = (z(&a), z(&b));
        prop_assert_eq!(a.add(&b).huff_even(), a.huff_even().add(&b.huff_even()));
        prop_assert_eq!(a.huff_even().huff_even(), a.huff_even());
    }

    #[test]
    fn huff_even_is_a_module_map_over_even_series(
        a in series_coeffs(101), b in series_coeffs(50)
    ) {
        // H(a * b(q^2)) = H(a) * b(q^2): multiplying by a series in q^2
        // commutes with the dissection.
        let a = z(&a);
        let b_even = z(&b).substitute_power(2);
        prop_assert_eq!(
            a.mul(&b_even).huff_even(),
            a.huff_even().mul(&b_even)
        );
    }

    #[test]
    fn huff_even_interleaves_the_even_extraction(a in series_coeffs(100)) {
        let a = z(&a);
        let rebuilt = a.extract_ap(2, 0).substitute_power(2).truncated(100);
        prop_assert_eq!(a.huff_even(), rebuilt);
    }

    #[test]
    fn extract_with_unit_step_is_identity(a in series_coeffs(100)) {
        let a = z(&a);
        prop_assert_eq!(a.extract_ap(1, 0), a);
    }

    #[test]
    fn mod64_matches_exact_reduction_for_every_operation(
        mut a in series_coeffs(200), b in series_coeffs(200), e in 0u32..=64
    ) {
        let zb = z(&b);
        let mb = reduce(&zb);

        // Plain ring operations on arbitrary inputs.
        let za = z(&a);
        let ma = reduce(&za);
        prop_assert_eq!(reduce(&za.add(&zb)), ma.add(&mb));
        prop_assert_eq!(reduce(&za.sub(&zb)), ma.sub(&mb));
        prop_assert_eq!(reduce(&za.neg()), ma.neg());
        prop_assert_eq!(reduce(&za.mul(&zb)), ma.mul(&mb));
        prop_assert_eq!(reduce(&za.pow(3).unwrap()), ma.pow(3).unwrap());

        // Structural operations.
        prop_assert_eq!(reduce(&za.huff_even()), ma.huff_even());
        prop_assert_eq!(reduce(&za.extract_ap(3, 1)), ma.extract_ap(3, 1));
        prop_assert_eq!(reduce(&za.substitute_power(2)), ma.substitute_power(2));
        prop_assert_eq!(reduce(&za.shift(2).unwrap()), ma.shift(2).unwrap());

        // Divisibility by 2^e is decided identically (the reason the word
        // ring is usable for congruence scans at all).
        prop_assert_eq!(
            za.divisible_by_2pow(e).unwrap(),
            ma.divisible_by_2pow(e).unwrap()
        );

        // Inversion and division demand a unit constant term; +-1 is a unit
        // in both rings.
        a[0] = 1;
        let za = z(&a);
        let ma = reduce(&za);
        prop_assert_eq!(reduce(&za.invert().unwrap()), ma.invert().unwrap());
        prop_assert_eq!(reduce(&zb.div(&za).unwrap()), mb.div(&ma).unwrap());

        // Exact division by q after zeroing the low coefficient.
        a[0] = 0;
        let za = z(&a);
        let ma = reduce(&za);
        prop_assert_eq!(reduce(&za.shift(-1).unwrap()), ma.shift(-1).unwrap());
    }
}
