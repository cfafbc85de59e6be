//! Affine coordinates `a_{n,m}(hbar)` of the two tau-functions.
//!
//! Both are the hook coefficient `(-1)^n / ((m+n+1) m! n!)` times an
//! `hbar`-dependent content factor: `prod_{j=-m}^{n} 1/(1 + j*hbar)` for the
//! monotone tau-function and `exp(hbar (m^2+m-n^2-n)/2)` for the simple one.

use alloc::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::exactarith::{FactoredRationalFunction, Polynomial, Rational};

/// `(-1)^n / ((m+n+1) m! n!)`, the signed reciprocal hook product of `(m|n)`.
pub fn hook_coefficient(n: u32, m: u32) -> Rational {
    let fact = |x: u32| (1..=x).fold(BigInt::one(), |acc, k| acc * BigInt::from(k));
    let denom = BigInt::from(m + n + 1) * fact(m) * fact(n);
    let sign = if n.is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
    Rational::new(sign, denom)
}

/// Monotone affine coordinate, stored in the uniform `(1 - k*hbar)` factor convention.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneAffineWeight {
    pub value: FactoredRationalFunction,
}

impl MonotoneAffineWeight {
    /// The constant numerator.
    pub fn coefficient(&self) -> Rational {
        self.value.numerator().coeff(0)
    }
}

/// Simple affine coordinate `coefficient * exp(exponent_k * hbar)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleAffineWeight {
    pub exponent_k: i64,
    pub coefficient: Rational,
}

pub fn monotone_affine(n: u32, m: u32) -> MonotoneAffineWeight {
    // (1 + j h) = (1 - (-j) h) for j in -m..=n, j != 0
    let denominator: BTreeMap<i64, u32> = (1..=i64::from(m))
        .chain((1..=i64::from(n)).map(|j| -j))
        .map(|k| (k, 1))
        .collect();
    MonotoneAffineWeight {
        value: FactoredRationalFunction::new(
            Polynomial::constant(hook_coefficient(n, m)),
            denominator,
        ),
    }
}

pub fn simple_affine(n: u32, m: u32) -> SimpleAffineWeight {
    let (n64, m64) = (i64::from(n), i64::from(m));
    SimpleAffineWeight {
        exponent_k: (m64 * m64 + m64 - n64 * n64 - n64) / 2,
        coefficient: hook_coefficient(n, m),
    }
}

/// Memo table of affine weights keyed by `(n, m)`.
///
/// Owned by one engine run, so each worker keeps its own table.
#[derive(Debug, Default)]
pub struct AffineTable {
    monotone: BTreeMap<(u32, u32), MonotoneAffineWeight>,
    simple: BTreeMap<(u32, u32), SimpleAffineWeight>,
}

impl AffineTable {
    pub fn new() -> Self {
        AffineTable::default()
    }

    pub fn monotone(&mut self, n: u32, m: u32) -> &MonotoneAffineWeight {
        self.monotone
            .entry((n, m))
            .or_insert_with(|| monotone_affine(n, m))
    }

    pub fn simple(&mut self, n: u32, m: u32) -> &SimpleAffineWeight {
        self.simple
            .entry((n, m))
            .or_insert_with(|| simple_affine(n, m))
    }
}
