//! Coefficient rings for truncated series arithmetic.
//!
//! Two rings are supported: exact arbitrary-precision integers, and integers
//! modulo 2^64 on machine words. The modular ring is the exact image of the
//! integer ring under reduction, so divisibility by 2^e stays decidable for
//! e <= 64, which is all the congruence scans need.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Identifies the coefficient ring of a series, for reports and CLI output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoeffRing {
    /// Exact arbitrary-precision integers.
    #[serde(rename = "exact")]
    ExactInteger,
    /// Integers modulo 2^64 (wrapping machine arithmetic).
    #[serde(rename = "mod64")]
    Mod2w,
}

impl fmt::Display for CoeffRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffRing::ExactInteger => write!(f, "exact"),
            CoeffRing::Mod2w => write!(f, "mod64"),
        }
    }
}

/// A coefficient ring element.
///
/// Implemented by [`BigInt`] (exact integers) and [`M64`] (integers mod 2^64).
/// The reference-taking signatures keep big-integer convolutions free of
/// needless clones.
pub trait Coeff: Clone + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    const RING: CoeffRing;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    /// Image of an exact integer in this ring.
    fn from_bigint(n: &BigInt) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `self += a * b`; the convolution kernel.
    fn add_mul(&mut self, a: &Self, b: &Self);
    /// `self -= a * b`.
    fn sub_mul(&mut self, a: &Self, b: &Self);
    /// Multiplicative inverse, or `None` when `self` is not a unit.
    fn inverse(&self) -> Option<Self>;
    /// Largest e for which divisibility by 2^e is decidable, `None` if unbounded.
    fn max_two_exponent() -> Option<u32>;
    /// Whether 2^e divides this value. `e` must be decidable in this ring.
    fn two_divides(&self, e: u32) -> bool;
}

impl Coeff for BigInt {
    const RING: CoeffRing = CoeffRing::ExactInteger;

    fn zero() -> Self {
        BigInt::ZERO
    }

    fn one() -> Self {
        BigInt::from(1)
    }

    fn from_i64(n: i64) -> Self {
        BigInt::from(n)
    }

    fn from_bigint(n: &BigInt) -> Self {
        n.clone()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn neg(&self) -> Self {
        -self
    }

    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }

    fn sub_mul(&mut self, a: &Self, b: &Self) {
        *self -= a * b;
    }

    fn inverse(&self) -> Option<Self> {
        // The only integer units are +1 and -1, each its own inverse.
        if self.magnitude().is_one() {
            Some(self.clone())
        } else {
            None
        }
    }

    fn max_two_exponent() -> Option<u32> {
        None
    }

    fn two_divides(&self, e: u32) -> bool {
        match self.trailing_zeros() {
            None => true, // 0 is divisible by every power
            Some(t) => t >= u64::from(e),
        }
    }
}

/// An integer modulo 2^64, represented by its least nonnegative residue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
pub struct M64(pub u64);

impl fmt::Display for M64 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Coeff for M64 {
    const RING: CoeffRing = CoeffRing::Mod2w;

    fn zero() -> Self {
        M64(0)
    }

    fn one() -> Self {
        M64(1)
    }

    fn from_i64(n: i64) -> Self {
        M64(n as u64)
    }

    fn from_bigint(n: &BigInt) -> Self {
        let lo = n.iter_u64_digits().next().unwrap_or(0);
        if n.is_negative() {
            M64(lo.wrapping_neg())
        } else {
            M64(lo)
        }
    }

    fn is_zero(&self) -> bool {
        self.0 == 0
    }

    fn add(&self, rhs: &Self) -> Self {
        M64(self.0.wrapping_add(rhs.0))
    }

    fn sub(&self, rhs: &Self) -> Self {
        M64(self.0.wrapping_sub(rhs.0))
    }

    fn mul(&self, rhs: &Self) -> Self {
        M64(self.0.wrapping_mul(rhs.0))
    }

    fn neg(&self) -> Self {
        M64(self.0.wrapping_neg())
    }

    fn add_mul(&mut self, a: &Self, b: &Self) {
        self.0 = self.0.wrapping_add(a.0.wrapping_mul(b.0));
    }

    fn sub_mul(&mut self, a: &Self, b: &Self) {
        self.0 = self.0.wrapping_sub(a.0.wrapping_mul(b.0));
    }

    /// Newton lifting: for odd a, x = a inverts a mod 8, and each step
    /// x <- x(2 - ax) doubles the number of correct low bits.
    fn inverse(&self) -> Option<Self> {
        let a = self.0;
        if a & 1 == 0 {
            return None;
        }
        let mut x = a;
        for _ in 0..5 {
            x = x.wrapping_mul(2u64.wrapping_sub(a.wrapping_mul(x)));
        }
        debug_assert_eq!(a.wrapping_mul(x), 1);
        Some(M64(x))
    }

    fn max_two_exponent() -> Option<u32> {
        Some(64)
    }

    fn two_divides(&self, e: u32) -> bool {
        debug_assert!(e <= 64);
        self.0.trailing_zeros() >= e
    }
}
