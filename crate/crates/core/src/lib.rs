//! Exact q-series computation and verification for 8-colour partitions.
//!
//! The crate computes p_8(n), the number of partitions of n with parts in 8
//! distinguishable colours (generating function 1/f_1^8 where f_k is the
//! Euler product over (1 - q^{kj})), and verifies to configurable truncation
//! order:
//!
//! - the displayed eta-quotient identities and 2-dissection recurrences
//!   ([`identities`], backed by the bundled registry in [`eta`]);
//! - the integer tables behind the deep generating functions and their
//!   2-adic valuation bounds ([`tables`]);
//! - nine Ramanujan-type congruence families modulo powers of 2
//!   ([`congruences`]).
//!
//! Everything is built on [`series::TruncSeries`], a dense truncated power
//! series over either exact integers or integers mod 2^64 ([`ring`]). All
//! values are immutable after construction and operations are pure, so
//! independent verifications can run in parallel.

pub mod congruences;
pub mod eta;
pub mod identities;
pub mod report;
pub mod ring;
pub mod series;
pub mod tables;

pub use eta::{p8_oracle, p8_series};
pub use report::{CheckMode, Report};
pub use ring::{Coeff, CoeffRing, M64};
pub use series::{SeriesError, TruncSeries};
