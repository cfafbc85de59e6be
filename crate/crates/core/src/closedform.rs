//! Genus-independent closed forms `sum_{k,i} C(mu;k,i) b^{i-1} k^b`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactarith::{int, pow_int, ExpSum, FactoredRationalFunction, Polynomial, Rational};
use crate::npoint::{monotone_generating, simple_generating};
use crate::partitions::Partition;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    Monotone,
    Simple,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Monotone => "monotone",
            Kind::Simple => "simple",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "monotone" => Ok(Kind::Monotone),
            "simple" => Ok(Kind::Simple),
            other => Err(Error::Inconsistent(alloc::format!("unknown kind '{other}'"))),
        }
    }
}

/// One term `coeff * b^{i-1} * k^b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub k: i64,
    pub i: u32,
    pub coeff: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenusClosedForm {
    pub kind: Kind,
    pub mu: Partition,
    /// `d + l - 2`, so that `b = 2g + b_offset`.
    pub b_offset: u32,
    pub normalization: Rational,
    /// Sorted by `k` descending, then `i` descending; zero coefficients never appear.
    pub terms: Vec<Term>,
}

impl GenusClosedForm {
    pub fn degree(&self) -> u32 {
        self.mu.size()
    }

    /// `C(mu;k,i)`, zero when absent.
    pub fn coefficient(&self, k: i64, i: u32) -> Rational {
        self.terms
            .iter()
            .find(|t| t.k == k && t.i == i)
            .map_or_else(Rational::zero, |t| t.coeff.clone())
    }

    pub fn branch_points(&self, g: u32) -> u32 {
        2 * g + self.b_offset
    }
}

fn parts_product(mu: &Partition) -> BigInt {
    mu.parts().iter().fold(BigInt::one(), |a, &p| a * BigInt::from(p))
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * BigInt::from(k))
}

fn sort_terms(terms: &mut [Term]) {
    terms.sort_by(|a, b| b.k.cmp(&a.k).then(b.i.cmp(&a.i)));
}

fn parity_sign(mu: &Partition) -> Rational {
    if (mu.size() as usize + mu.len()).is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// `prod_{s=1}^{i-1} (x + s) / (i-1)!` as a polynomial in `x`.
fn rising_binomial(i: u32) -> Polynomial {
    let mut p = Polynomial::one();
    for s in 1..i {
        p = &p * &Polynomial::from_coeffs(alloc::vec![int(i64::from(s)), int(1)]);
    }
    p.scale(&Rational::new(BigInt::one(), factorial(i - 1)))
}

/// Closed form of `vecH_{g;mu}` from the partial fractions of the generating function.
pub fn monotone_closed_form(mu: &Partition) -> Result<GenusClosedForm> {
    let generating = monotone_generating(mu)?;
    monotone_closed_form_from(mu, &generating)
}

/// Closed form from an already computed monotone generating function.
pub fn monotone_closed_form_from(
    mu: &Partition,
    generating: &FactoredRationalFunction,
) -> Result<GenusClosedForm> {
    let pf = generating.partial_fractions()?;
    if pf.recombine() != *generating {
        return Err(Error::Inconsistent(
            "partial fractions do not recombine to the generating function".into(),
        ));
    }
    let eps = parity_sign(mu);
    let mut by_k: BTreeMap<i64, Polynomial> = BTreeMap::new();
    for (&(k, i), d) in &pf.terms {
        if pf.coefficient(-k, i) * &eps != *d {
            return Err(Error::Inconsistent(alloc::format!(
                "pole coefficients at k={k} and k={} violate the hbar parity",
                -k
            )));
        }
        if k <= 0 {
            continue;
        }
        // D(k,i) + eps * D(-k,i) with eps * D(-k,i) = D(k,i)
        let piece = rising_binomial(i).scale(&(d * int(2)));
        let slot = by_k.entry(k).or_insert_with(Polynomial::zero);
        *slot = &*slot + &piece;
    }
    let mut terms = Vec::new();
    for (k, poly) in by_k {
        for (idx, c) in poly.coeffs().iter().enumerate() {
            if !c.is_zero() {
                terms.push(Term {
                    k,
                    i: idx as u32 + 1,
                    coeff: c.clone(),
                });
            }
        }
    }
    sort_terms(&mut terms);
    Ok(GenusClosedForm {
        kind: Kind::Monotone,
        mu: mu.clone(),
        b_offset: mu.size() + mu.len() as u32 - 2,
        normalization: Rational::new(BigInt::one(), parts_product(mu)),
        terms,
    })
}

/// Integer closed form of `H_{g;mu}` from the exponential-sum coefficients.
pub fn simple_closed_form(mu: &Partition) -> Result<GenusClosedForm> {
    let generating = simple_generating(mu)?;
    simple_closed_form_from(mu, &generating)
}

/// Closed form from an already computed exponential sum.
pub fn simple_closed_form_from(mu: &Partition, generating: &ExpSum) -> Result<GenusClosedForm> {
    let eps = parity_sign(mu);
    if generating.reflect().scale(&eps) != *generating {
        return Err(Error::Inconsistent(
            "exponential sum violates the hbar parity".into(),
        ));
    }
    let scale = Rational::from_integer(factorial(mu.size()) * parts_product(mu));
    let mut terms = Vec::new();
    for (&k, d) in generating.terms() {
        if k <= 0 {
            continue;
        }
        let c = d * &scale;
        if !c.is_integer() {
            return Err(Error::NonIntegerCoefficient { k });
        }
        terms.push(Term { k, i: 1, coeff: c });
    }
    sort_terms(&mut terms);
    Ok(GenusClosedForm {
        kind: Kind::Simple,
        mu: mu.clone(),
        b_offset: mu.size() + mu.len() as u32 - 2,
        normalization: Rational::new(BigInt::from(2), factorial(mu.size()) * parts_product(mu)),
        terms,
    })
}

pub fn closed_form(kind: Kind, mu: &Partition) -> Result<GenusClosedForm> {
    match kind {
        Kind::Monotone => monotone_closed_form(mu),
        Kind::Simple => simple_closed_form(mu),
    }
}

/// `normalization * sum coeff * b^{i-1} * k^b` with `b = 2g + b_offset`.
pub fn evaluate(form: &GenusClosedForm, g: u32) -> Rational {
    let b = form.branch_points(g);
    let bb = int(i64::from(b));
    let sum = form.terms.iter().fold(Rational::zero(), |acc, t| {
        let mut x = &t.coeff * pow_int(t.k, b);
        for _ in 1..t.i {
            x *= &bb;
        }
        acc + x
    });
    sum * &form.normalization
}

fn binomial2(n: u32) -> i64 {
    i64::from(n) * (i64::from(n) - 1) / 2
}

/// Observed coefficients against the leading-term theorems.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureReport {
    pub kind: Kind,
    /// Simple: `C(mu; (d choose 2))`. Monotone: `C(mu; d-1, 1)`.
    pub top_coefficient: Rational,
    pub expected_top: Rational,
    /// Simple: nothing in `((d-1 choose 2), (d choose 2))`. Monotone: nothing at
    /// `k >= d`, and no `i >= 2` terms at `k = d-1` or `k = d-2`.
    pub gap_all_zero: bool,
    /// Simple only: `C(mu; (d-1 choose 2))`; absent when that `k` is zero.
    pub second_coefficient: Option<Rational>,
    pub expected_second: Option<Rational>,
}

impl StructureReport {
    pub fn passed(&self) -> bool {
        self.top_coefficient == self.expected_top
            && self.gap_all_zero
            && self.second_coefficient == self.expected_second
    }
}

pub fn structure_checks(form: &GenusClosedForm) -> StructureReport {
    let d = form.degree();
    match form.kind {
        Kind::Simple => {
            let top = binomial2(d);
            let second = binomial2(d - 1);
            let gap_all_zero = form.terms.iter().all(|t| t.k <= second || t.k >= top)
                && form.terms.iter().all(|t| t.k <= top);
            let (second_coefficient, expected_second) = if second > 0 {
                let ones = i64::from(form.mu.count_ones());
                (
                    Some(form.coefficient(second, 1)),
                    Some(int(-i64::from(d) * ones)),
                )
            } else {
                (None, None)
            };
            StructureReport {
                kind: Kind::Simple,
                top_coefficient: form.coefficient(top, 1),
                expected_top: Rational::one(),
                gap_all_zero,
                second_coefficient,
                expected_second,
            }
        }
        Kind::Monotone => {
            let lead = i64::from(d) - 1;
            let expected = Rational::new(
                BigInt::from(2) * BigInt::from(d - 1).pow(d - 2),
                factorial(d) * factorial(d - 2),
            );
            let gap_all_zero = form
                .terms
                .iter()
                .all(|t| t.k <= lead && !((t.k == lead || t.k == lead - 1) && t.i >= 2));
            StructureReport {
                kind: Kind::Monotone,
                top_coefficient: form.coefficient(lead, 1),
                expected_top: expected,
                gap_all_zero,
                second_coefficient: None,
                expected_second: None,
            }
        }
    }
}

/// Terms in order of dominance as `g -> infinity`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Asymptotics {
    pub terms: Vec<Term>,
    /// How many of the first terms make up the stated expansion.
    pub leading: usize,
}

impl Asymptotics {
    pub fn leading_terms(&self) -> &[Term] {
        &self.terms[..self.leading]
    }

    pub fn exact(&self) -> bool {
        self.leading == self.terms.len()
    }
}

pub fn asymptotics(form: &GenusClosedForm) -> Asymptotics {
    let mut terms = form.terms.clone();
    sort_terms(&mut terms);
    let wanted = match form.kind {
        Kind::Simple => 2,
        Kind::Monotone => 1,
    };
    Asymptotics {
        leading: wanted.min(terms.len()),
        terms,
    }
}

/// Renders a closed form as `norm * (c * b^{i-1} * k^b + ...)` for display.
pub fn describe(form: &GenusClosedForm) -> String {
    use core::fmt::Write;
    let mut out = String::new();
    let _ = write!(out, "{} * (", form.normalization);
    for (n, t) in form.terms.iter().enumerate() {
        if n > 0 {
            out.push_str(if t.coeff.is_negative() { " - " } else { " + " });
        } else if t.coeff.is_negative() {
            out.push('-');
        }
        let _ = write!(out, "{}", t.coeff.abs());
        if t.i > 1 {
            let _ = write!(out, "*b^{}", t.i - 1);
        }
        let _ = write!(out, "*{}^b", t.k);
    }
    out.push(')');
    out
}
