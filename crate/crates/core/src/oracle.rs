//! Brute-force constellation counts, straight from the definitions.
//!
//! A root `sigma_1` of cycle type `mu` is followed by `b` transpositions
//! `(A, B)`, `A < B`, whose product with the root is the identity. Depth-first
//! search prunes on the transposition distance of the running product and, in
//! monotone mode, on `B >= previous B`. Transitivity is checked at the leaves.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::closedform::Kind;
use crate::error::{Error, Result};
use crate::exactarith::Rational;
use crate::partitions::{aut_order, Partition};

pub const MAX_DEGREE: u32 = 6;
pub const MAX_BRANCH_POINTS: u32 = 7;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstellationQuery {
    pub mu: Partition,
    pub b: u32,
    pub monotone: bool,
    /// Lifts the `d <= 6`, `b <= 7` guard.
    pub force: bool,
}

impl ConstellationQuery {
    pub fn new(mu: Partition, b: u32, monotone: bool) -> Self {
        ConstellationQuery {
            mu,
            b,
            monotone,
            force: false,
        }
    }

    pub fn check_limits(&self) -> Result<()> {
        let degree = self.mu.size();
        if degree == 0 {
            return Err(Error::InvalidPartition("the oracle needs d >= 1".into()));
        }
        if !self.force && (degree > MAX_DEGREE || self.b > MAX_BRANCH_POINTS) {
            return Err(Error::OracleTooLarge {
                degree,
                branch_points: self.b,
            });
        }
        Ok(())
    }
}

/// Permutation of `{1..n}` from 1-based cycles, as 0-based images.
pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for c in cycles {
        for (j, &x) in c.iter().enumerate() {
            p[x - 1] = c[(j + 1) % c.len()] - 1;
        }
    }
    p
}

pub fn cycle_type(p: &[usize]) -> Vec<u32> {
    let mut seen = vec![false; p.len()];
    let mut lengths = Vec::new();
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        lengths.push(len);
    }
    lengths.sort_unstable_by(|a, b| b.cmp(a));
    lengths
}

struct UnionFind {
    parent: Vec<usize>,
    components: usize,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            components: n,
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
            self.components -= 1;
        }
    }
}

/// Whether the group generated by `perms` (0-based images) is transitive on `{0..d-1}`.
pub fn is_transitive(perms: &[Vec<usize>], d: usize) -> bool {
    let mut uf = UnionFind::new(d);
    for p in perms {
        for (x, &y) in p.iter().enumerate() {
            if x < d && y < d {
                uf.union(x, y);
            }
        }
    }
    uf.components <= 1
}

/// Every permutation of cycle type `mu`, in lexicographic order of images.
pub fn conjugacy_class(mu: &Partition) -> Vec<Vec<usize>> {
    let d = mu.size() as usize;
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..d).collect();
    loop {
        if cycle_type(&current) == mu.parts() {
            out.push(current.clone());
        }
        // next permutation in lexicographic order
        let Some(i) = (1..d).rev().find(|&i| current[i - 1] < current[i]) else {
            break;
        };
        let j = (i..d).rev().find(|&j| current[j] > current[i - 1]).unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
    }
    out
}

struct Walk<'a> {
    root: &'a [usize],
    product: Vec<usize>,
    cycles: usize,
    word: Vec<(usize, usize)>,
    b: usize,
    monotone: bool,
    count: u128,
}

impl Walk<'_> {
    fn same_cycle(&self, a: usize, b: usize) -> bool {
        let mut x = self.product[a];
        while x != a {
            if x == b {
                return true;
            }
            x = self.product[x];
        }
        false
    }

    fn leaf(&mut self) {
        let d = self.product.len();
        let mut uf = UnionFind::new(d);
        for (x, &y) in self.root.iter().enumerate() {
            uf.union(x, y);
        }
        for &(a, b) in &self.word {
            uf.union(a, b);
        }
        if uf.components == 1 {
            self.count += 1;
        }
    }

    fn go(&mut self) {
        let d = self.product.len();
        let remaining = self.b - self.word.len();
        let distance = d - self.cycles;
        if distance > remaining || (remaining - distance) % 2 == 1 {
            return;
        }
        if remaining == 0 {
            self.leaf();
            return;
        }
        let min_b = match (self.monotone, self.word.last()) {
            (true, Some(&(_, last))) => last,
            _ => 1,
        };
        if remaining == 1 {
            // the product is itself a transposition, which must be the last factor
            let lo = (0..d).find(|&x| self.product[x] != x).unwrap();
            let hi = self.product[lo];
            if hi >= min_b {
                self.word.push((lo, hi));
                self.leaf();
                self.word.pop();
            }
            return;
        }
        for hi in min_b..d {
            for lo in 0..hi {
                let split = self.same_cycle(lo, hi);
                self.product.swap(lo, hi);
                if split {
                    self.cycles += 1;
                } else {
                    self.cycles -= 1;
                }
                self.word.push((lo, hi));
                self.go();
                self.word.pop();
                self.product.swap(lo, hi);
                if split {
                    self.cycles -= 1;
                } else {
                    self.cycles += 1;
                }
            }
        }
    }
}

/// Tuples below one fixed root permutation.
pub fn count_from_root(root: &[usize], b: u32, monotone: bool) -> u128 {
    let mut walk = Walk {
        root,
        product: root.to_vec(),
        cycles: cycle_type(root).len(),
        word: Vec::with_capacity(b as usize),
        b: b as usize,
        monotone,
        count: 0,
    };
    walk.go();
    walk.count
}

pub fn count_constellations(q: &ConstellationQuery) -> Result<BigUint> {
    q.check_limits()?;
    Ok(conjugacy_class(&q.mu)
        .iter()
        .map(|root| BigUint::from(count_from_root(root, q.b, q.monotone)))
        .fold(BigUint::zero(), |a, c| a + c))
}

/// `b = 2g - 2 + d + l`.
pub fn branch_points(mu: &Partition, g: u32) -> u32 {
    2 * g + mu.size() + mu.len() as u32 - 2
}

/// `|Aut mu| / d!` times the count, as an exact rational.
pub fn hurwitz_from_count(mu: &Partition, count: BigUint) -> Rational {
    let d_fact = (1..=mu.size()).fold(BigUint::from(1u32), |a, k| a * k);
    Rational::new(
        BigInt::from(aut_order(mu) * count),
        BigInt::from(d_fact),
    )
}

pub fn oracle_hurwitz(mu: &Partition, g: u32, kind: Kind) -> Result<Rational> {
    oracle_hurwitz_forced(mu, g, kind, false)
}

pub fn oracle_hurwitz_forced(mu: &Partition, g: u32, kind: Kind, force: bool) -> Result<Rational> {
    let q = ConstellationQuery {
        mu: mu.clone(),
        b: branch_points(mu, g),
        monotone: kind == Kind::Monotone,
        force,
    };
    let count = count_constellations(&q)?;
    Ok(hurwitz_from_count(mu, count))
}
