//! Coefficient extraction from the connected n-point function.
//!
//! For `l(mu) >= 2` the generating object is a sum over `l`-cycles `sigma` of
//! products of `l` kernels `Ahat(z_a, z_b)`, each of which is either its
//! principal part `+-sum_h z^{-1-h} w^h` or an affine term
//! `a_{n,m} z_a^{-n-1} z_b^{-m-1}`. Extracting the coefficient of
//! `z_1^{-mu_1-1} ... z_l^{-mu_l-1}` never materializes a series: once the
//! first affine edge is fixed, the exponent balance at each vertex determines
//! the next edge's index, so the search walks once around the cycle.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::affine::{hook_coefficient, AffineTable};
use crate::error::{Error, Result};
use crate::exactarith::{int, ExpSum, FactoredRationalFunction, Polynomial, Rational};
use crate::partitions::Partition;

/// An `l`-cycle on `{1..l}`, stored as its visiting sequence starting at 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclicOrder {
    sequence: Vec<usize>,
}

impl CyclicOrder {
    pub fn new(sequence: Vec<usize>) -> Result<Self> {
        let l = sequence.len();
        let mut seen = vec![false; l + 1];
        let valid = sequence.first() == Some(&1)
            && sequence.iter().all(|&v| {
                (1..=l).contains(&v) && !core::mem::replace(&mut seen[v], true)
            });
        if !valid {
            return Err(Error::Inconsistent(
                "a cyclic order must visit each of 1..l once, starting at 1".into(),
            ));
        }
        Ok(CyclicOrder { sequence })
    }

    pub fn sequence(&self) -> &[usize] {
        &self.sequence
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    /// `sigma^i(1)` for `i >= 0`.
    pub fn power_of_one(&self, i: usize) -> usize {
        self.sequence[i % self.sequence.len()]
    }

    /// Endpoints `(sigma^i(1), sigma^{i+1}(1))` of edge `i` (1-based), as 1-based labels.
    pub fn edge(&self, i: usize) -> (usize, usize) {
        (self.power_of_one(i), self.power_of_one(i + 1))
    }
}

/// Which part of `Ahat` an edge of the cycle product picks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeTerm {
    Principal { h: u32 },
    Affine { n: u32, m: u32 },
}

/// One nonzero term of the coefficient extraction for a fixed cycle.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct EdgeAssignment {
    /// Edge `i` (1-based) is `edges[i - 1]`.
    pub edges: Vec<EdgeTerm>,
    /// Product of the principal-part signs.
    pub sign: i32,
}

impl EdgeAssignment {
    /// The 1-based indices of affine edges.
    pub fn affine_set(&self) -> Vec<usize> {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, e)| matches!(e, EdgeTerm::Affine { .. }))
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn affine_pairs(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.edges.iter().filter_map(|e| match *e {
            EdgeTerm::Affine { n, m } => Some((n, m)),
            EdgeTerm::Principal { .. } => None,
        })
    }
}

/// All `(l-1)!` cycles on `{1..l}` in lexicographic order of their visiting sequence.
pub fn enumerate_cycles(l: usize) -> Vec<CyclicOrder> {
    fn go(rest: &mut Vec<usize>, prefix: &mut Vec<usize>, out: &mut Vec<CyclicOrder>) {
        if rest.is_empty() {
            out.push(CyclicOrder {
                sequence: prefix.clone(),
            });
            return;
        }
        for i in 0..rest.len() {
            let v = rest.remove(i);
            prefix.push(v);
            go(rest, prefix, out);
            prefix.pop();
            rest.insert(i, v);
        }
    }
    if l == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    go(&mut (2..=l).collect(), &mut vec![1], &mut out);
    out
}

struct Search<'a, F> {
    parts: &'a [u32],
    /// `verts[i]` is the 0-based label of `sigma^{i+1}(1)`, the first endpoint of edge `i`.
    verts: Vec<usize>,
    degree: u32,
    edges: Vec<EdgeTerm>,
    visit: F,
}

impl<F: FnMut(&[EdgeTerm], i32)> Search<'_, F> {
    fn target(&self, v: usize) -> i64 {
        -i64::from(self.parts[v]) - 1
    }

    fn run(&mut self) {
        let l = self.verts.len();
        let d = self.degree;
        // j is the smallest affine edge; edges before it must be principal
        for j in 0..l {
            for n in 0..d {
                for m in 0..(d - n) {
                    self.edges[j] = EdgeTerm::Affine { n, m };
                    let closure = self.target(self.verts[j]) + i64::from(n) + 1;
                    self.walk(j, 1, -i64::from(m) - 1, n + m + 1, closure, 1);
                }
            }
        }
    }

    /// Places edge `(first + step) mod l`, whose first endpoint already received `incoming`.
    fn walk(&mut self, first: usize, step: usize, incoming: i64, used: u32, closure: i64, sign: i32) {
        let l = self.verts.len();
        if step == l {
            if incoming == closure {
                debug_assert_eq!(used, self.degree);
                (self.visit)(&self.edges, sign);
            }
            return;
        }
        let e = (first + step) % l;
        let (a, b) = (self.verts[e], self.verts[(e + 1) % l]);
        let required = self.target(a) - incoming;
        // principal part: the smaller label carries -1-h, the larger carries h
        let principal = if a < b {
            (required <= -1).then(|| (-required - 1, -required - 1, sign))
        } else {
            (required >= 0).then(|| (required, -required - 1, -sign))
        };
        if let Some((h, to_b, sign)) = principal {
            assert!(h < i64::from(self.degree), "principal index out of range");
            self.edges[e] = EdgeTerm::Principal { h: h as u32 };
            self.walk(first, step + 1, to_b, used, closure, sign);
        }
        if e > first && required <= -1 {
            let n = (-required - 1) as u32;
            let budget = self.degree - used;
            if n < budget {
                for m in 0..(budget - n) {
                    self.edges[e] = EdgeTerm::Affine { n, m };
                    self.walk(first, step + 1, -i64::from(m) - 1, used + n + m + 1, closure, sign);
                }
            }
        }
    }
}

fn search_cycle<F: FnMut(&[EdgeTerm], i32)>(parts: &[u32], cycle: &CyclicOrder, visit: F) {
    let l = parts.len();
    assert_eq!(cycle.len(), l, "cycle length must match the number of parts");
    if l < 2 {
        return;
    }
    let verts = (1..=l).map(|i| cycle.power_of_one(i) - 1).collect();
    let mut search = Search {
        parts,
        verts,
        degree: parts.iter().sum(),
        edges: vec![EdgeTerm::Principal { h: 0 }; l],
        visit,
    };
    search.run();
}

/// Visits every nonzero edge assignment of `cycle` for the given parts.
///
/// `parts[v]` is the part attached to vertex `v + 1`; any order is accepted.
pub fn for_each_assignment<F: FnMut(&EdgeAssignment)>(parts: &[u32], cycle: &CyclicOrder, mut visit: F) {
    search_cycle(parts, cycle, |edges, sign| {
        visit(&EdgeAssignment {
            edges: edges.to_vec(),
            sign,
        })
    });
}

/// The complete list of nonzero edge assignments for `cycle`.
pub fn enumerate_edge_assignments(cycle: &CyclicOrder, mu: &Partition) -> Vec<EdgeAssignment> {
    let mut out = Vec::new();
    for_each_assignment(mu.parts(), cycle, |a| out.push(a.clone()));
    out.sort();
    out
}

/// Coefficient of `z_1^{-mu_1-1} z_2^{-mu_2-1}` in `i_{z1,z2} 1/(z1 - z2)^2`.
///
/// The expansion is `sum_h (h+1) z_1^{-2-h} z_2^h`, which never reaches a
/// negative power of `z_2`, so this is zero for every genuine two-part input.
fn double_pole_correction(parts: &[u32]) -> Rational {
    let h = -i64::from(parts[1]) - 1;
    if h >= 0 && -2 - h == -i64::from(parts[0]) - 1 {
        int(h + 1)
    } else {
        Rational::zero()
    }
}

fn sign_pow(e: usize) -> i64 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Signed count of assignments per multiset of affine pairs `(n, m)`.
///
/// The weight of an assignment depends only on its affine pairs, so both
/// engines tally integers here and touch rationals once per distinct multiset.
/// Censuses of disjoint cycle sets merge by addition.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AffineCensus {
    counts: BTreeMap<Vec<(u32, u32)>, i64>,
}

impl AffineCensus {
    pub fn new() -> Self {
        AffineCensus::default()
    }

    /// Adds every assignment of one cycle, with the global `(-1)^{l-1}` sign.
    pub fn add_cycle(&mut self, parts: &[u32], cycle: &CyclicOrder) {
        let global = sign_pow(parts.len() - 1);
        let mut key = Vec::with_capacity(parts.len());
        search_cycle(parts, cycle, |edges, sign| {
            key.clear();
            key.extend(edges.iter().filter_map(|e| match *e {
                EdgeTerm::Affine { n, m } => Some((n, m)),
                EdgeTerm::Principal { .. } => None,
            }));
            key.sort_unstable();
            let delta = global * i64::from(sign);
            match self.counts.get_mut(key.as_slice()) {
                Some(c) => *c += delta,
                None => {
                    self.counts.insert(key.clone(), delta);
                }
            }
        });
    }

    pub fn merge(&mut self, other: AffineCensus) {
        for (k, v) in other.counts {
            *self.counts.entry(k).or_insert(0) += v;
        }
    }

    pub fn counts(&self) -> impl Iterator<Item = (&[(u32, u32)], i64)> + '_ {
        self.counts
            .iter()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| (k.as_slice(), c))
    }

    /// The monotone output `mu_1 ... mu_l * sum_g hbar^b vecH_{g;mu}`, before the two-part correction.
    pub fn monotone(&self, degree: u32) -> FactoredRationalFunction {
        let d = i64::from(degree);
        let width = 2 * degree as usize + 1;
        // group by denominator exponent vector, indexed by k + d
        let mut groups: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
        for (pairs, count) in self.counts() {
            let mut exps = vec![0u32; width];
            let mut c = int(count);
            for &(n, m) in pairs {
                c *= hook_coefficient(n, m);
                for k in 1..=i64::from(m) {
                    exps[(d + k) as usize] += 1;
                }
                for k in 1..=i64::from(n) {
                    exps[(d - k) as usize] += 1;
                }
            }
            *groups.entry(exps).or_insert_with(Rational::zero) += c;
        }
        groups.retain(|_, c| !c.is_zero());
        let mut common = vec![0u32; width];
        for exps in groups.keys() {
            for (s, &e) in exps.iter().enumerate() {
                common[s] = common[s].max(e);
            }
        }
        let mut numerator = Polynomial::zero();
        for (exps, c) in &groups {
            let mut piece = Polynomial::constant(c.clone());
            for (s, &e) in exps.iter().enumerate() {
                piece.mul_linear_factor_pow(s as i64 - d, common[s] - e);
            }
            numerator = &numerator + &piece;
        }
        let denominator = common
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(s, &e)| (s as i64 - d, e))
            .collect();
        FactoredRationalFunction::new(numerator, denominator)
    }

    /// The simple output before the `1/(mu_1 ... mu_l)` factor and the two-part correction.
    pub fn simple(&self, table: &mut AffineTable) -> ExpSum {
        let mut sum = ExpSum::zero();
        for (pairs, count) in self.counts() {
            let mut c = int(count);
            let mut k = 0i64;
            for &(n, m) in pairs {
                let w = table.simple(n, m);
                c *= &w.coefficient;
                k += w.exponent_k;
            }
            sum.add_term(k, c);
        }
        sum
    }
}

fn full_census(parts: &[u32]) -> AffineCensus {
    let mut census = AffineCensus::new();
    for cycle in enumerate_cycles(parts.len()) {
        census.add_cycle(parts, &cycle);
    }
    census
}

/// Subtracts the double-pole term of the two-point kernel, which is always zero here.
fn two_part_correction(parts: &[u32]) -> Rational {
    if parts.len() != 2 {
        return Rational::zero();
    }
    let correction = double_pole_correction(parts);
    assert!(correction.is_zero(), "double-pole term reached the extracted coefficient");
    correction
}

/// Finishes a monotone census for `parts` (any order, `l >= 2`).
pub fn monotone_from_census(parts: &[u32], census: &AffineCensus) -> FactoredRationalFunction {
    let out = census.monotone(parts.iter().sum());
    &out + &FactoredRationalFunction::constant(-two_part_correction(parts))
}

/// Finishes a simple census for `parts` (any order, `l >= 2`).
pub fn simple_from_census(parts: &[u32], census: &AffineCensus) -> ExpSum {
    let mut table = AffineTable::new();
    let mut sum = census.simple(&mut table);
    sum.add_term(0, -two_part_correction(parts));
    let product = parts.iter().fold(BigInt::one(), |acc, &p| acc * BigInt::from(p));
    sum.scale(&Rational::new(BigInt::one(), product))
}

/// `mu_1 ... mu_l * sum_g hbar^b vecH_{g;mu}` for parts in any order.
pub fn monotone_generating_parts(parts: &[u32]) -> Result<FactoredRationalFunction> {
    let d = check_degree(parts)?;
    if parts.len() == 1 {
        let mut table = AffineTable::new();
        let mut total = FactoredRationalFunction::zero();
        for n in 0..d {
            total = &total + &table.monotone(n, d - 1 - n).value;
        }
        return Ok(total);
    }
    Ok(monotone_from_census(parts, &full_census(parts)))
}

pub fn monotone_generating(mu: &Partition) -> Result<FactoredRationalFunction> {
    monotone_generating_parts(mu.parts())
}

/// `sum_g hbar^b / b! * H_{g;mu}` as an exponential sum, for parts in any order.
pub fn simple_generating_parts(parts: &[u32]) -> Result<ExpSum> {
    let d = check_degree(parts)?;
    if parts.len() == 1 {
        let mut table = AffineTable::new();
        let mut sum = ExpSum::zero();
        for n in 0..d {
            let w = table.simple(n, d - 1 - n);
            sum.add_term(w.exponent_k, w.coefficient.clone());
        }
        return Ok(sum.scale(&Rational::new(BigInt::one(), BigInt::from(d))));
    }
    Ok(simple_from_census(parts, &full_census(parts)))
}

pub fn simple_generating(mu: &Partition) -> Result<ExpSum> {
    simple_generating_parts(mu.parts())
}

/// Checks the arguments shared by both engines and returns `d`.
pub fn check_degree(parts: &[u32]) -> Result<u32> {
    let d: u32 = parts.iter().sum();
    if d < 2 || parts.contains(&0) {
        return Err(Error::DegreeTooSmall(d));
    }
    Ok(d)
}
