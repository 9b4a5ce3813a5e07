//! Integer partitions and the special shape classes used throughout the crate:
//! the diagonal-hook class `Q1`, rectangles and their complements, and the
//! staircase construction `λ{n}`.
//!
//! Canonical text form is comma separated parts (`3,1`), with `-` for the
//! empty partition. Lists of partitions are produced in descending
//! lexicographic order.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers. Trailing zeros are
/// never stored, so the empty vector is the empty partition.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Builds a partition, dropping trailing zeros.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Precondition(format!(
                "parts {parts:?} are not weakly decreasing"
            )));
        }
        if parts.contains(&0) {
            return Err(Error::Precondition(format!(
                "parts {parts:?} contain an interior zero"
            )));
        }
        Ok(Partition(parts))
    }

    pub(crate) fn from_decreasing(mut parts: Vec<usize>) -> Self {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The `rows × cols` rectangle `(cols, …, cols)`.
    pub fn rectangle(rows: usize, cols: usize) -> Self {
        if cols == 0 {
            return Self::empty();
        }
        Partition(vec![cols; rows])
    }

    /// The single row `(d)`.
    pub fn row(d: usize) -> Self {
        Self::from_decreasing(vec![d])
    }

    /// The single column `(1^d)`.
    pub fn column(d: usize) -> Self {
        Partition(vec![1; d])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn into_parts(self) -> Vec<usize> {
        self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of boxes.
    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// The `i`-th part (0-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn first(&self) -> usize {
        self.part(0)
    }

    pub fn transpose(&self) -> Partition {
        let width = self.first();
        let parts = (0..width)
            .map(|c| self.0.iter().take_while(|&&p| p > c).count())
            .collect();
        Partition(parts)
    }

    /// Diagram containment `other ⊆ self`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.0.iter().zip(&self.0).all(|(o, s)| o <= s)
    }

    /// Number of boxes on the main diagonal.
    pub fn durfee(&self) -> usize {
        self.0
            .iter()
            .enumerate()
            .take_while(|&(i, &p)| p > i)
            .count()
    }

    /// Arm length of box `(i, j)` (0-based).
    pub fn arm(&self, i: usize, j: usize) -> usize {
        self.part(i) - j - 1
    }

    /// Leg length of box `(i, j)` (0-based).
    pub fn leg(&self, i: usize, j: usize) -> usize {
        self.0.iter().skip(i + 1).take_while(|&&p| p > j).count()
    }

    /// Membership in `Q1`: every diagonal box has arm exactly one more than
    /// its leg.
    pub fn q1_contains(&self) -> bool {
        (0..self.durfee()).all(|i| self.arm(i, i) == self.leg(i, i) + 1)
    }

    /// `λ{n} = (λ₁+n+1, …, λₙ+n+1, λ†₁, λ†₂, …)`.
    pub fn brace(&self, n: usize) -> Result<Partition> {
        if n == 0 {
            return Err(Error::Precondition("brace needs n ≥ 1".into()));
        }
        if self.len() > n {
            return Err(Error::Precondition(format!(
                "brace: ℓ({self}) = {} exceeds n = {n}",
                self.len()
            )));
        }
        let mut parts: Vec<usize> = (0..n).map(|i| self.part(i) + n + 1).collect();
        parts.extend(self.transpose().0);
        Ok(Partition(parts))
    }

    /// Recovers `(μ, n)` with `self = μ{n}`, if `self` has that form.
    pub fn unbrace(&self) -> Option<(Partition, usize)> {
        let n = (0..self.len())
            .take_while(|&i| self.0[i] >= i + 2)
            .count();
        if n == 0 {
            return None;
        }
        let mu = Partition::from_decreasing(self.0[..n].iter().map(|p| p - n - 1).collect());
        let tail = Partition(self.0[n..].to_vec());
        (mu.len() <= n && tail == mu.transpose()).then_some((mu, n))
    }

    /// Complement inside the `n × k` rectangle: `μᵢ = k − λ_{n+1−i}`.
    pub fn complement_in_rect(&self, n: usize, k: usize) -> Option<Partition> {
        if self.len() > n || self.first() > k {
            return None;
        }
        Some(Partition::from_decreasing(
            (0..n).map(|i| k - self.part(n - 1 - i)).collect(),
        ))
    }

    /// Dominance order, defined for partitions of the same size.
    pub fn dominates(&self, other: &Partition) -> bool {
        let len = self.len().max(other.len());
        let (mut a, mut b) = (0, 0);
        for i in 0..len {
            a += self.part(i);
            b += other.part(i);
            if a < b {
                return false;
            }
        }
        true
    }

    /// Partition with every part doubled.
    pub fn doubled(&self) -> Partition {
        Partition(self.0.iter().map(|p| 2 * p).collect())
    }

    /// Comparison in the descending-lexicographic listing order.
    pub fn listing_cmp(&self, other: &Partition) -> Ordering {
        other.0.cmp(&self.0)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("-");
        }
        let mut first = true;
        for p in &self.0 {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "-" || s.is_empty() || s == "0" {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("partition `{s}`: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// All partitions of `m` in descending lexicographic order.
pub fn partitions_of(m: usize) -> Vec<Partition> {
    partitions_bounded(m, m, usize::MAX)
}

/// Partitions of `m` with largest part ≤ `max_part` and at most `max_len`
/// parts, in descending lexicographic order.
pub fn partitions_bounded(m: usize, max_part: usize, max_len: usize) -> Vec<Partition> {
    fn go(
        remaining: usize,
        max_part: usize,
        max_len: usize,
        prefix: &mut Vec<usize>,
        out: &mut Vec<Partition>,
    ) {
        if remaining == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        if prefix.len() == max_len {
            return;
        }
        for p in (1..=max_part.min(remaining)).rev() {
            prefix.push(p);
            go(remaining - p, p, max_len, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(m, max_part, max_len, &mut Vec::new(), &mut out);
    out
}

/// Every partition fitting in the `rows × cols` box, grouped by size
/// (ascending) and descending lexicographic within a size.
pub fn partitions_in_box(rows: usize, cols: usize) -> Vec<Partition> {
    (0..=rows * cols)
        .flat_map(|m| partitions_bounded(m, cols, rows))
        .collect()
}

/// Result of enumerating `Q1` partitions of a fixed size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Q1Listing {
    pub partitions: Vec<Partition>,
    /// Set when the requested size was odd; `Q1` has no odd-size members.
    pub odd_size_warning: bool,
}

/// All `Q1` partitions of size `m`.
pub fn q1_of_size(m: usize) -> Q1Listing {
    if m % 2 == 1 {
        return Q1Listing {
            partitions: Vec::new(),
            odd_size_warning: true,
        };
    }
    Q1Listing {
        partitions: partitions_of(m)
            .into_iter()
            .filter(Partition::q1_contains)
            .collect(),
        odd_size_warning: false,
    }
}
