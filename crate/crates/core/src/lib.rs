//! Exact q-series machinery for generalized Frobenius partitions.
//!
//! The crate computes the generating functions `CΨ_{k,a}(q)` three ways
//! (coefficient extraction from a two-variable product, a recursive theta
//! decomposition, and combinatorial enumeration), renders closed product
//! formulas, models the same numbers with colored Motzkin paths, and checks
//! coefficient congruences.
//!
//! Half-integer quantities are stored doubled throughout: `a2 = 2a`,
//! `m2 = 2m`, `b2 = 2b`, and ζ-exponents are kept as `2r`.

pub mod congruence;
pub mod decomp;
pub mod error;
pub mod formulas;
pub mod frobgen;
pub mod motzkin;
pub mod qseries;
pub mod thetafun;

pub use error::{Error, Result};
pub use qseries::{QSeries, ZetaSeries};

use num_rational::Rational64;

/// Shorthand for an exact rational exponent or precision.
pub fn rat(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

/// Shorthand for an integer exponent or precision.
pub fn int(n: i64) -> Rational64 {
    Rational64::from_integer(n)
}
