//! Exact truncated formal power series in one variable q.
//!
//! A [`TruncSeries`] of order N represents coefficients a_0..a_N; everything
//! from q^{N+1} on is unknown, not zero. Every operation records the tightest
//! order its output is valid to, and comparisons only ever look at the common
//! valid range. Products use schoolbook convolution: exactness is free and the
//! mod-2^64 ring keeps deep scans fast without an FFT.

use crate::ring::Coeff;
use thiserror::Error;

/// Errors from series operations whose preconditions are data-dependent.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    /// Inversion or division requires a unit constant term.
    #[error("constant term {0} is not a unit in the {1} ring")]
    NonUnitConstant(String, &'static str),
    /// Division by q^s is exact only when the low coefficients vanish.
    #[error("inexact division by q^{shift}: coefficient at index {index} is {value}")]
    InexactShift {
        shift: usize,
        index: usize,
        value: String,
    },
    /// Divisibility by 2^e is undecidable in a word-sized modular ring.
    #[error("divisibility by 2^{e} exceeds the ring capability 2^{max}")]
    ExponentTooLarge { e: u32, max: u32 },
}

fn non_unit<C: Coeff>(c: &C) -> SeriesError {
    let ring = match C::RING {
        crate::ring::CoeffRing::ExactInteger => "exact integer",
        crate::ring::CoeffRing::Mod2w => "mod-2^64",
    };
    SeriesError::NonUnitConstant(c.to_string(), ring)
}

/// A truncated power series: coefficients `a_0..a_N` in a fixed ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncSeries<C: Coeff> {
    coeffs: Vec<C>,
}

impl<C: Coeff> TruncSeries<C> {
    /// The zero series, represented to the given order.
    pub fn zero(order: usize) -> Self {
        TruncSeries {
            coeffs: vec![C::zero(); order + 1],
        }
    }

    /// The constant series 1, represented to the given order.
    pub fn one(order: usize) -> Self {
        Self::monomial(C::one(), 0, order)
    }

    /// The constant series c, represented to the given order.
    pub fn constant(c: C, order: usize) -> Self {
        Self::monomial(c, 0, order)
    }

    /// `c * q^exp`, represented to the given order. Requires `exp <= order`.
    pub fn monomial(c: C, exp: usize, order: usize) -> Self {
        assert!(
            exp <= order,
            "monomial exponent {exp} exceeds order {order}"
        );
        let mut coeffs = vec![C::zero(); order + 1];
        coeffs[exp] = c;
        TruncSeries { coeffs }
    }

    /// Builds a series from a dense coefficient vector; the order is `len - 1`.
    pub fn from_coeffs(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "a series represents at least a_0");
        TruncSeries { coeffs }
    }

    pub fn from_i64_coeffs(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| C::from_i64(c)).collect())
    }

    /// Largest index whose coefficient is known.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of q^n. Panics beyond the truncation order: that
    /// coefficient is unknown, not zero.
    pub fn coeff(&self, n: usize) -> &C {
        assert!(
            n <= self.order(),
            "coefficient {n} requested beyond order {}",
            self.order()
        );
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// The same series restricted to a smaller order.
    pub fn truncated(&self, order: usize) -> Self {
        assert!(
            order <= self.order(),
            "cannot extend order {} to {order}",
            self.order()
        );
        TruncSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(C::is_zero)
    }

    /// Coefficient-wise sum to the smaller of the two orders.
    pub fn add(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        TruncSeries {
            coeffs: (0..=order)
                .map(|n| self.coeffs[n].add(&rhs.coeffs[n]))
                .collect(),
        }
    }

    /// Coefficient-wise difference to the smaller of the two orders.
    pub fn sub(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        TruncSeries {
            coeffs: (0..=order)
                .map(|n| self.coeffs[n].sub(&rhs.coeffs[n]))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(C::neg).collect(),
        }
    }

    /// Multiplies every coefficient by c.
    pub fn scale(&self, c: &C) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    /// Cauchy product truncated to the smaller of the two orders.
    pub fn mul(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        let mut out = vec![C::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                out[i + j].add_mul(a, b);
            }
        }
        TruncSeries { coeffs: out }
    }

    /// Multiplicative inverse to the same order, by the triangular recurrence
    /// b_n = -a_0^{-1} sum_{k=1..n} a_k b_{n-k}. Only the nonzero a_k are
    /// visited, so inverting a sparse series (an Euler product, say) costs
    /// O(N * nnz) instead of O(N^2).
    pub fn invert(&self) -> Result<Self, SeriesError> {
        let a0_inv = self.coeffs[0]
            .inverse()
            .ok_or_else(|| non_unit(&self.coeffs[0]))?;
        let order = self.order();
        let support: Vec<(usize, &C)> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let mut out: Vec<C> = Vec::with_capacity(order + 1);
        out.push(a0_inv.clone());
        for n in 1..=order {
            let mut acc = C::zero();
            for &(k, a) in support.iter().take_while(|&&(k, _)| k <= n) {
                acc.add_mul(a, &out[n - k]);
            }
            out.push(a0_inv.mul(&acc).neg());
        }
        Ok(TruncSeries { coeffs: out })
    }

    /// Exact quotient `self / rhs` to the common order; `rhs` needs a unit
    /// constant term. Solves c * rhs = self coefficient-wise, visiting only
    /// the nonzero coefficients of `rhs`.
    pub fn div(&self, rhs: &Self) -> Result<Self, SeriesError> {
        let b0_inv = rhs.coeffs[0]
            .inverse()
            .ok_or_else(|| non_unit(&rhs.coeffs[0]))?;
        let order = self.order().min(rhs.order());
        let support: Vec<(usize, &C)> = rhs
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let mut out: Vec<C> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut acc = self.coeffs[n].clone();
            for &(k, b) in support.iter().take_while(|&&(k, _)| k <= n) {
                acc.sub_mul(b, &out[n - k]);
            }
            out.push(b0_inv.mul(&acc));
        }
        Ok(TruncSeries { coeffs: out })
    }

    /// Integer power by binary exponentiation; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<Self, SeriesError> {
        if e < 0 {
            return self
                .invert()?
                .pow(e.checked_neg().expect("exponent overflow"));
        }
        let mut result = Self::one(self.order());
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(result)
    }

    /// Substitutes q -> q^k: the result has a_n at index k*n and zeros
    /// elsewhere, valid to order k*(N+1) - 1 (the first unknown source
    /// coefficient only affects index k*(N+1)).
    pub fn substitute_power(&self, k: usize) -> Self {
        assert!(k >= 1, "substitution power must be positive");
        let out_order = k * (self.order() + 1) - 1;
        let mut out = vec![C::zero(); out_order + 1];
        for (n, a) in self.coeffs.iter().enumerate() {
            out[k * n] = a.clone();
        }
        TruncSeries { coeffs: out }
    }

    /// Multiplies by q^s (s >= 0) or divides exactly by q^{-s} (s < 0).
    /// Division demands that the low coefficients vanish; a nonzero one is an
    /// error, never a silent truncation.
    pub fn shift(&self, s: i64) -> Result<Self, SeriesError> {
        if s >= 0 {
            let s = s as usize;
            let mut out = vec![C::zero(); self.coeffs.len() + s];
            for (n, a) in self.coeffs.iter().enumerate() {
                out[n + s] = a.clone();
            }
            Ok(TruncSeries { coeffs: out })
        } else {
            let s = s.unsigned_abs() as usize;
            let drop = s.min(self.coeffs.len());
            for (index, c) in self.coeffs.iter().enumerate().take(drop) {
                if !c.is_zero() {
                    return Err(SeriesError::InexactShift {
                        shift: s,
                        index,
                        value: c.to_string(),
                    });
                }
            }
            if drop == self.coeffs.len() {
                // Everything represented was zero; all that is left is a_0 = 0.
                return Ok(Self::zero(0));
            }
            Ok(TruncSeries {
                coeffs: self.coeffs[drop..].to_vec(),
            })
        }
    }

    /// The 2-dissection operator H: keeps even-exponent coefficients in place
    /// and zeroes the odd ones. Same order.
    pub fn huff_even(&self) -> Self {
        TruncSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, a)| if n % 2 == 0 { a.clone() } else { C::zero() })
                .collect(),
        }
    }

    /// Arithmetic-progression extraction: b_n = a_{m n + r}, valid to order
    /// floor((N - r) / m). Requires r <= N so at least b_0 is known.
    pub fn extract_ap(&self, m: usize, r: usize) -> Self {
        assert!(m >= 1, "progression step must be positive");
        assert!(r < m, "residue {r} must lie in [0, {m})");
        assert!(
            r <= self.order(),
            "residue {r} exceeds order {}; no coefficient is known",
            self.order()
        );
        let out_order = (self.order() - r) / m;
        TruncSeries {
            coeffs: (0..=out_order)
                .map(|n| self.coeffs[m * n + r].clone())
                .collect(),
        }
    }

    /// Checks that every represented coefficient is divisible by 2^e.
    /// Returns the smallest failing index, or `None` if all pass.
    pub fn divisible_by_2pow(&self, e: u32) -> Result<Option<usize>, SeriesError> {
        if let Some(max) = C::max_two_exponent() {
            if e > max {
                return Err(SeriesError::ExponentTooLarge { e, max });
            }
        }
        Ok(self.coeffs.iter().position(|c| !c.two_divides(e)))
    }

    /// First index in the common valid range where the two series differ.
    pub fn first_mismatch(&self, rhs: &Self) -> Option<usize> {
        let order = self.order().min(rhs.order());
        (0..=order).find(|&n| self.coeffs[n] != rhs.coeffs[n])
    }

    /// First index in the common valid range where the difference is not
    /// divisible by 2^e.
    pub fn first_incongruence(&self, rhs: &Self, e: u32) -> Result<Option<usize>, SeriesError> {
        self.sub(rhs).divisible_by_2pow(e)
    }
}
