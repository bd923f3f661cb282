//! Indices and the combinatorics built on them: weight/depth/height,
//! admissibility, the `u_k` exponent triple, enumeration, contractions,
//! set partitions and the `c_r(t)` polynomials.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{MzvError, Result};
use crate::rational::{binomial, factorial, Rational};

/// A finite, possibly empty, sequence of positive integers.
///
/// The derived ordering is plain lexicographic; use [`Index::canonical_cmp`]
/// for the weight-major order used in enumeration and reports.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Index(Vec<u32>);

/// Exponents of `u_k = X^i Y^j Z^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct UExponents {
    pub i: u32,
    pub j: u32,
    pub k: u32,
}

impl UExponents {
    pub fn total_degree(&self) -> u32 {
        self.i + self.j + self.k
    }

    /// `(weight, depth, height)` recovered from the exponents.
    pub fn stats(&self) -> (u32, u32, u32) {
        (self.i + self.j + 2 * self.k, self.j + self.k, self.k)
    }
}

impl std::ops::Add for UExponents {
    type Output = UExponents;

    fn add(self, rhs: Self) -> Self {
        UExponents {
            i: self.i + rhs.i,
            j: self.j + rhs.j,
            k: self.k + rhs.k,
        }
    }
}

impl Index {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(MzvError::InvalidIndex(format!("{parts:?}")));
        }
        Ok(Index(parts))
    }

    pub fn empty() -> Self {
        Index(Vec::new())
    }

    pub fn single(k: u32) -> Self {
        assert!(k > 0, "index entries are positive");
        Index(vec![k])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn depth(&self) -> u32 {
        self.0.len() as u32
    }

    pub fn height(&self) -> u32 {
        self.0.iter().filter(|&&k| k >= 2).count() as u32
    }

    pub fn stats(&self) -> (u32, u32, u32) {
        (self.weight(), self.depth(), self.height())
    }

    /// Empty, or last entry at least 2.
    pub fn is_admissible(&self) -> bool {
        self.0.last().is_none_or(|&k| k >= 2)
    }

    pub fn u_exponents(&self) -> UExponents {
        let (w, d, h) = self.stats();
        UExponents {
            i: w - d - h,
            j: d - h,
            k: h,
        }
    }

    /// Total degree of `u_k`, i.e. `weight - height`.
    pub fn u_degree(&self) -> u32 {
        self.weight() - self.height()
    }

    pub fn reversed(&self) -> Index {
        Index(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &Index) -> Index {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        Index(parts)
    }

    /// `(k_1, …, k_i)`.
    pub fn prefix(&self, i: usize) -> Index {
        Index(self.0[..i].to_vec())
    }

    /// `(k_{i+1}, …, k_r)`.
    pub fn suffix(&self, i: usize) -> Index {
        Index(self.0[i..].to_vec())
    }

    pub fn push(&mut self, k: u32) {
        assert!(k > 0, "index entries are positive");
        self.0.push(k);
    }

    pub fn with_last(&self, k: u32) -> Index {
        let mut out = self.clone();
        out.push(k);
        out
    }

    /// Split off the last entry.
    pub fn split_last(&self) -> Option<(Index, u32)> {
        self.0
            .split_last()
            .map(|(&last, rest)| (Index(rest.to_vec()), last))
    }

    /// Number of trailing entries equal to 1.
    pub fn trailing_ones(&self) -> usize {
        self.0.iter().rev().take_while(|&&k| k == 1).count()
    }

    /// All order-preserving coarsenings obtained by summing runs of adjacent
    /// entries, paired with the number of merges performed.
    ///
    /// There are `2^(depth-1)` of them for a nonempty index; the first entry
    /// is always the index itself with merge count 0.
    pub fn contractions(&self) -> Vec<(Index, u32)> {
        let r = self.0.len();
        if r == 0 {
            return vec![(Index::empty(), 0)];
        }
        let gaps = r - 1;
        let mut out = Vec::with_capacity(1 << gaps);
        for mask in 0u64..(1u64 << gaps) {
            let mut parts = Vec::with_capacity(r);
            let mut acc = self.0[0];
            for g in 0..gaps {
                if mask >> g & 1 == 1 {
                    acc += self.0[g + 1];
                } else {
                    parts.push(acc);
                    acc = self.0[g + 1];
                }
            }
            parts.push(acc);
            out.push((Index(parts), mask.count_ones()));
        }
        out
    }

    /// Weight-major, then lexicographic.
    pub fn canonical_cmp(&self, other: &Index) -> std::cmp::Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Debug for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Index({self})")
    }
}

/// Comma separated entries; the empty index prints as `-`.
impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("-");
        }
        for (n, k) in self.0.iter().enumerate() {
            if n > 0 {
                f.write_str(",")?;
            }
            write!(f, "{k}")?;
        }
        Ok(())
    }
}

impl FromStr for Index {
    type Err = MzvError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "-" || s == "∅" {
            return Ok(Index::empty());
        }
        let s = s.trim_start_matches('(').trim_end_matches(')');
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| MzvError::InvalidIndex(s.to_string()))?;
        Index::new(parts)
    }
}

impl Serialize for Index {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Index {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Compositions of `weight` in lexicographic order.
fn compositions(weight: u32, out: &mut Vec<Index>) {
    fn rec(remaining: u32, cur: &mut Vec<u32>, out: &mut Vec<Index>) {
        if remaining == 0 {
            out.push(Index(cur.clone()));
            return;
        }
        for k in 1..=remaining {
            cur.push(k);
            rec(remaining - k, cur, out);
            cur.pop();
        }
    }
    if weight == 0 {
        out.push(Index::empty());
    } else {
        rec(weight, &mut Vec::new(), out);
    }
}

/// Every index of weight `<= max_weight` exactly once, weight-major then
/// lexicographic. The empty index comes first in both modes.
pub fn enumerate_indices(max_weight: u32, admissible_only: bool) -> impl Iterator<Item = Index> {
    (0..=max_weight).flat_map(move |w| {
        let mut layer = Vec::new();
        compositions(w, &mut layer);
        layer
            .into_iter()
            .filter(move |k| !admissible_only || k.is_admissible())
    })
}

/// Every index whose `u_k` has total degree `<= max_degree`, in canonical
/// order. This is the exact support of a generating function truncated at
/// total degree `max_degree`; weights reach up to `2 * max_degree`.
pub fn enumerate_by_u_degree(max_degree: u32, admissible_only: bool) -> Vec<Index> {
    fn rec(budget: u32, cur: &mut Vec<u32>, out: &mut Vec<Index>) {
        out.push(Index(cur.clone()));
        // entry k costs 1 for k <= 2 and k - 1 otherwise
        for k in 1..=budget + 1 {
            let cost = if k <= 2 { 1 } else { k - 1 };
            if cost > budget {
                break;
            }
            cur.push(k);
            rec(budget - cost, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(max_degree, &mut Vec::new(), &mut out);
    out.retain(|k| !admissible_only || k.is_admissible());
    out.sort_by(|a, b| a.canonical_cmp(b));
    out
}

/// A partition of `{0, …, r-1}` into nonempty blocks (0-based elements).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SetPartition {
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Builds a partition from a restricted-growth string.
    fn from_rgs(rgs: &[usize]) -> Self {
        let n_blocks = rgs.iter().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); n_blocks];
        for (elem, &b) in rgs.iter().enumerate() {
            blocks[b].push(elem);
        }
        SetPartition { blocks }
    }
}

/// All set partitions of an `r`-element set, via restricted-growth strings.
pub fn set_partitions(r: usize) -> Result<Vec<SetPartition>> {
    if r == 0 {
        return Err(MzvError::InvalidArgument(
            "set partitions need r >= 1".into(),
        ));
    }
    let mut out = Vec::new();
    let mut rgs = vec![0usize; r];
    fn rec(pos: usize, max_so_far: usize, rgs: &mut Vec<usize>, out: &mut Vec<SetPartition>) {
        if pos == rgs.len() {
            out.push(SetPartition::from_rgs(rgs));
            return;
        }
        for b in 0..=max_so_far + 1 {
            rgs[pos] = b;
            rec(pos + 1, max_so_far.max(b), rgs, out);
        }
    }
    rec(1, 0, &mut rgs, &mut out);
    Ok(out)
}

/// `c_r(t) = (r-1)! (t^r - (t-1)^r)`, ascending coefficients in `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CPolynomial {
    r: u32,
    coeffs: Vec<Rational>,
}

impl CPolynomial {
    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * t + c)
    }
}

pub fn c_poly(r: u32) -> Result<CPolynomial> {
    if r == 0 {
        return Err(MzvError::InvalidArgument("c_r(t) needs r >= 1".into()));
    }
    let fact = Rational::from_integer(factorial(r - 1));
    // t^r - (t-1)^r = -sum_{j<r} C(r,j) t^j (-1)^(r-j)
    let mut coeffs: Vec<Rational> = (0..r)
        .map(|j| {
            let sign = if (r - j).is_multiple_of(2) {
                -BigInt::one()
            } else {
                BigInt::one()
            };
            Rational::from_integer(sign * binomial(r, j)) * &fact
        })
        .collect();
    while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    Ok(CPolynomial { r, coeffs })
}
