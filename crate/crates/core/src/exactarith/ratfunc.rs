use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg};

use num_traits::{One, Zero};

use super::{int, rat, Polynomial, Rational};
use crate::error::{Error, Result};

/// A rational function `N(hbar) / prod_k (1 - k*hbar)^{e_k}`.
///
/// The value is kept reduced: no factor `(1 - k*hbar)` in the denominator
/// divides the numerator, `k = 0` never appears, and the zero function has an
/// empty denominator. With that normalization two equal functions have equal
/// representations, so `==` is value equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredRationalFunction {
    numerator: Polynomial,
    denominator: BTreeMap<i64, u32>,
}

impl FactoredRationalFunction {
    pub fn new(numerator: Polynomial, denominator: BTreeMap<i64, u32>) -> Self {
        let mut f = FactoredRationalFunction {
            numerator,
            denominator,
        };
        f.reduce();
        f
    }

    pub fn zero() -> Self {
        FactoredRationalFunction::constant(Rational::zero())
    }

    pub fn one() -> Self {
        FactoredRationalFunction::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        FactoredRationalFunction {
            numerator: Polynomial::constant(c),
            denominator: BTreeMap::new(),
        }
    }

    pub fn polynomial(p: Polynomial) -> Self {
        FactoredRationalFunction {
            numerator: p,
            denominator: BTreeMap::new(),
        }
    }

    /// `c / (1 - k*hbar)^e`.
    pub fn pole(c: Rational, k: i64, e: u32) -> Self {
        let mut denominator = BTreeMap::new();
        if k != 0 && e > 0 {
            denominator.insert(k, e);
        }
        FactoredRationalFunction::new(Polynomial::constant(c), denominator)
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.numerator
    }

    /// Map `k -> e_k` of the factors `(1 - k*hbar)^{e_k}`.
    pub fn denominator_factors(&self) -> &BTreeMap<i64, u32> {
        &self.denominator
    }

    /// Order of the pole at `hbar = 1/k`.
    pub fn pole_order(&self, k: i64) -> u32 {
        self.denominator.get(&k).copied().unwrap_or(0)
    }

    pub fn denominator_degree(&self) -> usize {
        self.denominator.values().map(|&e| e as usize).sum()
    }

    /// The expanded denominator polynomial.
    pub fn denominator_polynomial(&self) -> Polynomial {
        let mut p = Polynomial::one();
        for (&k, &e) in &self.denominator {
            p.mul_linear_factor_pow(k, e);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    fn reduce(&mut self) {
        self.denominator.remove(&0);
        self.denominator.retain(|_, e| *e > 0);
        if self.numerator.is_zero() {
            self.denominator.clear();
            return;
        }
        for (&k, e) in self.denominator.iter_mut() {
            while *e > 0 {
                match self.numerator.div_linear_factor(k) {
                    Some(q) => {
                        self.numerator = q;
                        *e -= 1;
                    }
                    None => break,
                }
            }
        }
        self.denominator.retain(|_, e| *e > 0);
    }

    /// Value at `hbar = x`, `None` at a pole.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.denominator_polynomial().eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.numerator.eval(x) / d)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        FactoredRationalFunction::new(self.numerator.scale(c), self.denominator.clone())
    }

    /// Substitutes `hbar -> -hbar`; the factor `(1 - k*hbar)` becomes `(1 + k*hbar)`.
    pub fn reflect(&self) -> Self {
        FactoredRationalFunction {
            numerator: self.numerator.reflect(),
            denominator: self.denominator.iter().map(|(&k, &e)| (-k, e)).collect(),
        }
    }

    /// Power-series coefficients of `hbar^0 ..= hbar^order` at `hbar = 0`.
    pub fn taylor_coefficients(&self, order: usize) -> Vec<Rational> {
        let mut series: Vec<Rational> = (0..=order).map(|i| self.numerator.coeff(i)).collect();
        for (&k, &e) in &self.denominator {
            let k = int(k);
            for _ in 0..e {
                // multiply by 1/(1 - k h): s'_n = s_n + k s'_{n-1}
                for n in 1..=order {
                    let carry = &series[n - 1] * &k;
                    series[n] += carry;
                }
            }
        }
        series
    }

    /// Splits into `D0 + sum_{k,i} D(k,i) / (1 - k*hbar)^i`.
    ///
    /// Coefficients come from successive residue extraction: at `hbar = 1/k` the
    /// top-order coefficient is `N(1/k) / Q(1/k)` where `Q` is the cofactor; it
    /// is subtracted and one factor `(1 - k*hbar)` divided out, until the pole
    /// is exhausted. A leftover polynomial of positive degree is an error.
    pub fn partial_fractions(&self) -> Result<PartialFraction> {
        if let Some(deg) = self.numerator.degree() {
            if deg > self.denominator_degree() {
                return Err(Error::ImproperRationalFunction);
            }
        }
        let mut work = self.numerator.clone();
        let mut remaining = self.denominator.clone();
        let mut terms = BTreeMap::new();
        let keys: Vec<i64> = remaining.keys().copied().collect();
        for k in keys {
            let e = remaining.remove(&k).unwrap_or(0);
            let mut cofactor = Polynomial::one();
            for (&k2, &e2) in &remaining {
                cofactor.mul_linear_factor_pow(k2, e2);
            }
            let at = rat(1, k);
            let cofactor_at = cofactor.eval(&at);
            for i in (1..=e).rev() {
                let coeff = work.eval(&at) / &cofactor_at;
                if !coeff.is_zero() {
                    work = &work - &cofactor.scale(&coeff);
                    terms.insert((k, i), coeff);
                }
                work = work.div_linear_factor(k).ok_or_else(|| {
                    Error::Inconsistent("residue extraction left a nonzero remainder".into())
                })?;
            }
        }
        if work.degree().is_some_and(|d| d > 0) {
            return Err(Error::ImproperRationalFunction);
        }
        Ok(PartialFraction {
            constant: work.coeff(0),
            terms,
        })
    }
}

impl Add<&FactoredRationalFunction> for &FactoredRationalFunction {
    type Output = FactoredRationalFunction;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: &FactoredRationalFunction) -> FactoredRationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let mut common = self.denominator.clone();
        for (&k, &e) in &rhs.denominator {
            let slot = common.entry(k).or_insert(0);
            *slot = (*slot).max(e);
        }
        let lift = |f: &FactoredRationalFunction| {
            let mut n = f.numerator.clone();
            for (&k, &e) in &common {
                n.mul_linear_factor_pow(k, e - f.pole_order(k));
            }
            n
        };
        let numerator = &lift(self) + &lift(rhs);
        FactoredRationalFunction::new(numerator, common)
    }
}

impl Add for FactoredRationalFunction {
    type Output = FactoredRationalFunction;

    fn add(self, rhs: FactoredRationalFunction) -> FactoredRationalFunction {
        &self + &rhs
    }
}

impl Mul<&FactoredRationalFunction> for &FactoredRationalFunction {
    type Output = FactoredRationalFunction;

    fn mul(self, rhs: &FactoredRationalFunction) -> FactoredRationalFunction {
        let mut denominator = self.denominator.clone();
        for (&k, &e) in &rhs.denominator {
            *denominator.entry(k).or_insert(0) += e;
        }
        FactoredRationalFunction::new(&self.numerator * &rhs.numerator, denominator)
    }
}

impl Mul for FactoredRationalFunction {
    type Output = FactoredRationalFunction;

    fn mul(self, rhs: FactoredRationalFunction) -> FactoredRationalFunction {
        &self * &rhs
    }
}

impl Neg for &FactoredRationalFunction {
    type Output = FactoredRationalFunction;

    fn neg(self) -> FactoredRationalFunction {
        FactoredRationalFunction {
            numerator: -&self.numerator,
            denominator: self.denominator.clone(),
        }
    }
}

/// `constant + sum_{(k,i)} terms[(k,i)] / (1 - k*hbar)^i`, zero coefficients omitted.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PartialFraction {
    pub constant: Rational,
    pub terms: BTreeMap<(i64, u32), Rational>,
}

impl PartialFraction {
    pub fn coefficient(&self, k: i64, i: u32) -> Rational {
        self.terms.get(&(k, i)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Highest `i` stored for the pole at `hbar = 1/k`.
    pub fn max_order(&self, k: i64) -> u32 {
        self.terms
            .keys()
            .filter(|(k2, _)| *k2 == k)
            .map(|&(_, i)| i)
            .max()
            .unwrap_or(0)
    }

    /// Sums the pieces back over a common denominator.
    pub fn recombine(&self) -> FactoredRationalFunction {
        let mut denominator = BTreeMap::new();
        for &(k, i) in self.terms.keys() {
            let e = denominator.entry(k).or_insert(0u32);
            *e = (*e).max(i);
        }
        let mut numerator = Polynomial::constant(self.constant.clone());
        for (&k, &e) in &denominator {
            numerator.mul_linear_factor_pow(k, e);
        }
        for (&(k, i), c) in &self.terms {
            let mut piece = Polynomial::constant(c.clone());
            for (&k2, &e2) in &denominator {
                let e = if k2 == k { e2 - i } else { e2 };
                piece.mul_linear_factor_pow(k2, e);
            }
            numerator = &numerator + &piece;
        }
        FactoredRationalFunction::new(numerator, denominator)
    }
}

#[cfg(test)]
pub(crate) fn factors_from(list: &[(i64, u32)]) -> BTreeMap<i64, u32> {
    let mut out = BTreeMap::new();
    for &(k, e) in list {
        *out.entry(k).or_insert(0) += e;
    }
    out
}

#[cfg(test)]
pub(crate) fn poly_of(c: &[i64]) -> Polynomial {
    Polynomial::from_coeffs(c.iter().map(|&x| int(x)).collect::<Vec<_>>())
}
