//! Exact scalars and the two generating-function shapes in `hbar`.
//!
//! Monotone Hurwitz numbers come out as rational functions whose poles sit at
//! `hbar = 1/k`, so [`FactoredRationalFunction`] keeps its denominator as a
//! multiset of `(1 - k*hbar)` factors. Simple Hurwitz numbers come out as
//! finite exponential sums, held by [`ExpSum`].

mod expsum;
mod poly;
mod ratfunc;

pub use expsum::ExpSum;
pub use poly::Polynomial;
pub use ratfunc::{FactoredRationalFunction, PartialFraction};

use num_bigint::BigInt;

/// Arbitrary-precision reduced fraction. Displays as `p/q`, or `n` when `q = 1`.
pub type Rational = num_rational::BigRational;

/// `n / d` as a reduced rational.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `k^e` as a rational.
pub(crate) fn pow_int(k: i64, e: u32) -> Rational {
    Rational::from_integer(BigInt::from(k).pow(e))
}
