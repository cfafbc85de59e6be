//! Integer partitions and the combinatorial scalars attached to them.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

/// A weakly decreasing list of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition from parts that are already weakly decreasing and positive.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(String::from("parts must be positive")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(String::from(
                "parts must be weakly decreasing",
            )));
        }
        Ok(Partition { parts })
    }

    /// Sorts arbitrary positive parts into canonical (descending) order.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts)
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// `d = |mu|`.
    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// `l = l(mu)`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Multiplicity of every distinct part.
    pub fn multiplicities(&self) -> BTreeMap<u32, u32> {
        let mut out = BTreeMap::new();
        for &p in &self.parts {
            *out.entry(p).or_insert(0) += 1;
        }
        out
    }

    /// Number of parts equal to one.
    pub fn count_ones(&self) -> u32 {
        self.parts.iter().filter(|&&p| p == 1).count() as u32
    }

    /// `mu_1 * ... * mu_l`.
    pub fn parts_product(&self) -> BigUint {
        self.parts
            .iter()
            .fold(BigUint::one(), |acc, &p| acc * BigUint::from(p))
    }

    /// Comma separated parts, the form accepted on the command line.
    pub fn to_flag_string(&self) -> String {
        let mut s = String::new();
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            s.push_str(&format!("{p}"));
        }
        s
    }

    /// The hook partition `(arm+1, 1^leg)`, written `(arm|leg)` in Frobenius notation.
    pub fn hook(arm: u32, leg: u32) -> Self {
        let mut parts = Vec::with_capacity(leg as usize + 1);
        parts.push(arm + 1);
        parts.extend(core::iter::repeat_n(1, leg as usize));
        Partition { parts }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_flag_string())
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses `"3,2,1"`; order does not matter, the empty string is the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidPartition(format!("bad part {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::from_unsorted(parts)
    }
}

/// Frobenius coordinates `(m_1,...,m_r | n_1,...,n_r)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusCoords {
    arms: Vec<u32>,
    legs: Vec<u32>,
}

impl FrobeniusCoords {
    pub fn new(arms: Vec<u32>, legs: Vec<u32>) -> Result<Self> {
        let strict = |v: &[u32]| v.windows(2).all(|w| w[0] > w[1]);
        if arms.len() != legs.len() || !strict(&arms) || !strict(&legs) {
            return Err(Error::InvalidPartition(String::from(
                "Frobenius arms and legs must be strictly decreasing lists of equal length",
            )));
        }
        Ok(FrobeniusCoords { arms, legs })
    }

    pub fn arms(&self) -> &[u32] {
        &self.arms
    }

    pub fn legs(&self) -> &[u32] {
        &self.legs
    }

    /// Rebuilds the partition these coordinates describe.
    pub fn to_partition(&self) -> Partition {
        let r = self.arms.len() as u32;
        let mut parts: Vec<u32> = self
            .arms
            .iter()
            .zip(1..)
            .map(|(&m, i)| m + i)
            .collect();
        // rows below the diagonal block only see the first r columns
        let columns: Vec<u32> = self.legs.iter().zip(1..).map(|(&n, j)| n + j).collect();
        let mut row = r + 1;
        loop {
            let len = columns.iter().filter(|&&c| c >= row).count() as u32;
            if len == 0 {
                break;
            }
            parts.push(len);
            row += 1;
        }
        Partition { parts }
    }
}

impl fmt::Display for FrobeniusCoords {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u32]| {
            v.iter()
                .map(|x| format!("{x}"))
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "({}|{})", join(&self.arms), join(&self.legs))
    }
}

/// All partitions of `d` in reverse-lexicographic order.
pub fn partitions_of(d: u32) -> Vec<Partition> {
    fn go(remaining: u32, max_part: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition {
                parts: prefix.clone(),
            });
            return;
        }
        for p in (1..=remaining.min(max_part)).rev() {
            prefix.push(p);
            go(remaining - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(d, d, &mut Vec::new(), &mut out);
    out
}

pub fn conjugate(mu: &Partition) -> Partition {
    let first = mu.parts.first().copied().unwrap_or(0);
    let parts = (1..=first)
        .map(|j| mu.parts.iter().filter(|&&p| p >= j).count() as u32)
        .collect();
    Partition { parts }
}

pub fn frobenius(mu: &Partition) -> Result<FrobeniusCoords> {
    if mu.is_empty() {
        return Err(Error::NoFrobeniusCoordinates);
    }
    let t = conjugate(mu);
    let r = mu
        .parts
        .iter()
        .zip(1..)
        .take_while(|(&p, i)| p >= *i)
        .count();
    let arms = (0..r).map(|i| mu.parts[i] - (i as u32 + 1)).collect();
    let legs = (0..r).map(|i| t.parts[i] - (i as u32 + 1)).collect();
    Ok(FrobeniusCoords { arms, legs })
}

/// Product of all hook lengths `h(i,j) = mu_i + mu^t_j - i - j + 1`.
pub fn hook_product(mu: &Partition) -> BigUint {
    let t = conjugate(mu);
    let mut acc = BigUint::one();
    for (i, &row) in mu.parts.iter().enumerate() {
        for j in 0..row as usize {
            let h = (row - j as u32 - 1) + (t.parts[j] - i as u32 - 1) + 1;
            acc *= BigUint::from(h);
        }
    }
    acc
}

/// `kappa_mu = sum_i mu_i (mu_i - 2i + 1)`.
pub fn kappa(mu: &Partition) -> i64 {
    mu.parts
        .iter()
        .zip(1i64..)
        .map(|(&p, i)| {
            let p = i64::from(p);
            p * (p - 2 * i + 1)
        })
        .sum()
}

fn factorial(n: u32) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// `|Aut(mu)| = prod_j m_j(mu)!`.
pub fn aut_order(mu: &Partition) -> BigUint {
    mu.multiplicities()
        .values()
        .fold(BigUint::one(), |acc, &m| acc * factorial(m))
}

/// `z_mu = prod_j m_j(mu)! * j^{m_j(mu)}`.
pub fn z_lambda(mu: &Partition) -> BigUint {
    mu.multiplicities().iter().fold(BigUint::one(), |acc, (&j, &m)| {
        acc * factorial(m) * BigUint::from(j).pow(m)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    /// Euler's pentagonal recurrence, independent of the enumerator.
    fn partition_count(n: usize) -> i64 {
        let mut table = vec![0i64; n + 1];
        table[0] = 1;
        for m in 1..=n {
            let mut total = 0i64;
            for k in 1i64.. {
                let g1 = (k * (3 * k - 1) / 2) as usize;
                if g1 > m {
                    break;
                }
                let sign = if k % 2 == 1 { 1 } else { -1 };
                total += sign * table[m - g1];
                let g2 = (k * (3 * k + 1) / 2) as usize;
                if g2 <= m {
                    total += sign * table[m - g2];
                }
            }
            table[m] = total;
        }
        table[n]
    }

    #[test]
    fn enumerates_small_degrees() {
        assert_eq!(partitions_of(0), vec![Partition::empty()]);
        let four: Vec<_> = partitions_of(4).iter().map(|q| q.parts().to_vec()).collect();
        assert_eq!(
            four,
            vec![vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]
        );
        for n in 0..=12 {
            assert_eq!(partitions_of(n).len() as i64, partition_count(n as usize));
        }
        assert_eq!(partitions_of(8).len(), 22);
    }

    #[test]
    fn enumeration_is_reverse_lex_without_duplicates() {
        for d in 1..=9 {
            let all = partitions_of(d);
            assert!(all.windows(2).all(|w| w[0].parts() > w[1].parts()));
            assert!(all.iter().all(|q| q.size() == d));
        }
    }

    #[test]
    fn conjugates() {
        assert_eq!(conjugate(&p(&[3, 1])), p(&[2, 1, 1]));
        assert_eq!(conjugate(&p(&[1, 1, 1])), p(&[3]));
        assert_eq!(conjugate(&p(&[5, 3, 3, 1])), p(&[4, 3, 3, 1, 1]));
        assert_eq!(conjugate(&Partition::empty()), Partition::empty());
    }

    #[test]
    fn frobenius_coordinates() {
        let f = frobenius(&p(&[3, 1])).unwrap();
        assert_eq!((f.arms(), f.legs()), (&[2][..], &[1][..]));
        let f = frobenius(&p(&[4, 4, 2, 1])).unwrap();
        assert_eq!((f.arms(), f.legs()), (&[3, 2][..], &[3, 1][..]));
        for a in 0..5 {
            for b in 0..5 {
                let f = frobenius(&Partition::hook(a, b)).unwrap();
                assert_eq!((f.arms(), f.legs()), (&[a][..], &[b][..]));
            }
        }
        assert_eq!(
            frobenius(&Partition::empty()),
            Err(Error::NoFrobeniusCoordinates)
        );
    }

    #[test]
    fn invalid_frobenius_input() {
        assert!(FrobeniusCoords::new(vec![1, 1], vec![2, 0]).is_err());
        assert!(FrobeniusCoords::new(vec![1], vec![2, 0]).is_err());
    }

    #[test]
    fn hook_products() {
        assert_eq!(hook_product(&p(&[3])), BigUint::from(6u32));
        assert_eq!(hook_product(&p(&[2, 2])), BigUint::from(12u32));
        assert_eq!(hook_product(&Partition::empty()), BigUint::one());
        for m in 0..6 {
            for n in 0..6 {
                let expected = BigUint::from(m + n + 1) * factorial(m) * factorial(n);
                assert_eq!(hook_product(&Partition::hook(m, n)), expected);
            }
        }
    }

    #[test]
    fn kappa_values() {
        assert_eq!(kappa(&p(&[2])), 2);
        assert_eq!(kappa(&p(&[1, 1])), -2);
        let mu = p(&[4, 2, 1]);
        assert_eq!(kappa(&mu), -kappa(&conjugate(&mu)));
        assert_eq!(kappa(&mu), 6);
    }

    #[test]
    fn automorphisms_and_centralizers() {
        assert_eq!(aut_order(&p(&[3, 2, 1])), BigUint::one());
        assert_eq!(aut_order(&p(&[3, 3])), BigUint::from(2u32));
        assert_eq!(aut_order(&p(&[2, 2, 1, 1, 1])), BigUint::from(12u32));
        assert_eq!(z_lambda(&p(&[1, 1, 1])), BigUint::from(6u32));
        assert_eq!(z_lambda(&p(&[3])), BigUint::from(3u32));
    }

    #[test]
    fn parses_unsorted_flags() {
        let mu: Partition = "1,3,2".parse().unwrap();
        assert_eq!(mu, p(&[3, 2, 1]));
        assert_eq!(mu.to_flag_string(), "3,2,1");
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
        assert!("3,0".parse::<Partition>().is_err());
        assert!("3,x".parse::<Partition>().is_err());
        assert!(Partition::new(vec![1, 2]).is_err());
    }
}
