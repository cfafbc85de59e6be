use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{int, Rational};

/// Dense univariate polynomial in `hbar` over the rationals, lowest degree first.
///
/// Trailing zeros are always trimmed, so the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::from_coeffs(vec![c])
    }

    /// `c * hbar^degree`.
    pub fn monomial(c: Rational, degree: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = c;
        Polynomial::from_coeffs(coeffs)
    }

    /// The factor `1 - k*hbar`.
    pub fn linear_factor(k: i64) -> Self {
        Polynomial::from_coeffs(vec![Rational::one(), -int(k)])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `hbar^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Multiplicity of the root at `hbar = 0`; `None` for the zero polynomial.
    pub fn low_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Substitutes `hbar -> -hbar`.
    pub fn reflect(&self) -> Self {
        Polynomial {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        }
    }

    /// Multiplies by `(1 - k*hbar)^e` in place.
    pub fn mul_linear_factor_pow(&mut self, k: i64, e: u32) {
        let k = int(k);
        for _ in 0..e {
            if self.coeffs.is_empty() {
                return;
            }
            self.coeffs.push(Rational::zero());
            for i in (1..self.coeffs.len()).rev() {
                let shifted = &self.coeffs[i - 1] * &k;
                self.coeffs[i] -= shifted;
            }
        }
    }

    /// Exact quotient by `(1 - k*hbar)`, or `None` when it does not divide.
    pub fn div_linear_factor(&self, k: i64) -> Option<Self> {
        if k == 0 {
            return Some(self.clone());
        }
        let Some(deg) = self.degree() else {
            return Some(Polynomial::zero());
        };
        if deg == 0 {
            return None;
        }
        // self = (1 - k h) q ; solve from the top: a_n = -k q_{n-1}, a_i = q_i - k q_{i-1}
        let k = int(k);
        let mut q = vec![Rational::zero(); deg];
        q[deg - 1] = -&self.coeffs[deg] / &k;
        for i in (1..deg).rev() {
            q[i - 1] = (&q[i] - &self.coeffs[i]) / &k;
        }
        if q[0] != self.coeffs[0] {
            return None;
        }
        Some(Polynomial::from_coeffs(q))
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::from_coeffs(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}
