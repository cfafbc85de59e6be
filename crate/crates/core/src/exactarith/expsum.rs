use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{pow_int, Rational};

/// A finite sum `sum_k D_k * exp(k*hbar)`; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExpSum {
    terms: BTreeMap<i64, Rational>,
}

impl ExpSum {
    pub fn zero() -> Self {
        ExpSum::default()
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(terms: I) -> Self {
        let mut out = ExpSum::zero();
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    /// `c * exp(k*hbar)`.
    pub fn term(k: i64, c: Rational) -> Self {
        ExpSum::from_terms([(k, c)])
    }

    pub fn terms(&self) -> &BTreeMap<i64, Rational> {
        &self.terms
    }

    pub fn coefficient(&self, k: i64) -> Rational {
        self.terms.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, k: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(k).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn add(&self, other: &ExpSum) -> ExpSum {
        let mut out = self.clone();
        for (&k, c) in &other.terms {
            out.add_term(k, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> ExpSum {
        ExpSum::from_terms(self.terms.iter().map(|(&k, v)| (k, v * c)))
    }

    /// Multiplies by `exp(delta*hbar)`.
    pub fn shift(&self, delta: i64) -> ExpSum {
        ExpSum {
            terms: self.terms.iter().map(|(&k, v)| (k + delta, v.clone())).collect(),
        }
    }

    /// Substitutes `hbar -> -hbar`.
    pub fn reflect(&self) -> ExpSum {
        ExpSum {
            terms: self.terms.iter().map(|(&k, v)| (-k, v.clone())).collect(),
        }
    }

    /// `sum_k D_k k^n`, i.e. `n!` times the coefficient of `hbar^n`.
    pub fn moment(&self, n: u32) -> Rational {
        self.terms
            .iter()
            .map(|(&k, c)| c * pow_int(k, n))
            .fold(Rational::zero(), |a, b| a + b)
    }

    /// Power-series coefficients of `hbar^0 ..= hbar^order`.
    pub fn taylor_coefficients(&self, order: usize) -> Vec<Rational> {
        let mut factorial = BigInt::one();
        (0..=order)
            .map(|n| {
                if n > 0 {
                    factorial *= BigInt::from(n);
                }
                self.moment(n as u32) / Rational::from_integer(factorial.clone())
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactarith::{int, rat};

    #[test]
    fn cancellation_prunes() {
        let a = ExpSum::term(1, rat(1, 2));
        let b = ExpSum::term(1, rat(-1, 2));
        assert!(a.add(&b).is_zero());
        assert!(ExpSum::term(4, int(0)).is_zero());
    }

    #[test]
    fn shift_and_scale() {
        assert_eq!(ExpSum::term(0, int(1)).shift(3), ExpSum::term(3, int(1)));
        let s = ExpSum::from_terms([(10, int(1)), (5, int(-4))]).scale(&rat(1, 600));
        assert_eq!(s.coefficient(10), rat(1, 600));
        assert_eq!(s.coefficient(5), rat(-1, 150));
    }

    #[test]
    fn series_of_cosh() {
        // (e^h + e^-h)/2 - 1
        let s = ExpSum::from_terms([(1, rat(1, 2)), (-1, rat(1, 2)), (0, int(-1))]);
        let t = s.taylor_coefficients(4);
        assert_eq!(t, [int(0), int(0), rat(1, 2), int(0), rat(1, 24)]);
    }
}
