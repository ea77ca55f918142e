//! Linear orders over `{1..n}`, their inversion sets and ideals.
//!
//! A [`LinearOrder`] is a permutation of `1..=n` read as a preference from
//! most to least preferred. The left-right axis is always the natural order
//! `1 < 2 < ... < n`; callers with a different axis relabel at the boundary.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Errors from constructing or transforming linear orders.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrderError {
    #[error("ranking is empty")]
    Empty,
    #[error("value {value} is outside 1..={n}")]
    OutOfRange { value: u32, n: usize },
    #[error("duplicate value {value} in ranking")]
    Duplicate { value: u32 },
    #[error("cannot parse order from {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("subset is empty")]
    EmptySubset,
    #[error("subset member {value} is outside 1..={n}")]
    SubsetOutOfRange { value: u32, n: usize },
}

/// A strict preference over the alternatives `1..=n`: position 1 holds the
/// most preferred alternative.
///
/// The derived `Ord` is lexicographic on the ranking, which every sorted
/// collection and deterministic output in this crate relies on.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearOrder {
    ranking: Vec<u32>,
}

impl LinearOrder {
    /// Validates that `values` is a permutation of `1..=values.len()`.
    pub fn new(values: Vec<u32>) -> Result<Self, OrderError> {
        if values.is_empty() {
            return Err(OrderError::Empty);
        }
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v < 1 || v as usize > n {
                return Err(OrderError::OutOfRange { value: v, n });
            }
            if seen[v as usize] {
                return Err(OrderError::Duplicate { value: v });
            }
            seen[v as usize] = true;
        }
        Ok(Self { ranking: values })
    }

    /// The identity order `1 2 .. n` (often written α).
    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "orders need at least one alternative");
        Self {
            ranking: (1..=n as u32).collect(),
        }
    }

    /// The full reversal `n .. 2 1` (often written ω).
    pub fn reversal(n: usize) -> Self {
        assert!(n >= 1, "orders need at least one alternative");
        Self {
            ranking: (1..=n as u32).rev().collect(),
        }
    }

    /// Number of alternatives.
    pub fn n(&self) -> usize {
        self.ranking.len()
    }

    /// The ranking, most preferred first.
    pub fn ranking(&self) -> &[u32] {
        &self.ranking
    }

    /// The most preferred alternative.
    pub fn top(&self) -> u32 {
        self.ranking[0]
    }

    /// Set of pairs `(i, j)` with `i < j` where `j` is preferred to `i`.
    pub fn inversions(&self) -> InversionSet {
        let n = self.n();
        // position[v] = 0-based preference position of alternative v
        let mut position = vec![0usize; n + 1];
        for (pos, &v) in self.ranking.iter().enumerate() {
            position[v as usize] = pos;
        }
        let mut set = InversionSet::empty(n);
        for j in 2..=n as u32 {
            for i in 1..j {
                if position[j as usize] < position[i as usize] {
                    set.insert(i, j);
                }
            }
        }
        set
    }

    /// The `n` prefix sets (top-k preferred alternatives for k = 1..=n).
    pub fn ideals(&self) -> Vec<BTreeSet<u32>> {
        let mut out = Vec::with_capacity(self.n());
        let mut cur = BTreeSet::new();
        for &v in &self.ranking {
            cur.insert(v);
            out.push(cur.clone());
        }
        out
    }

    /// First preference position (2..=n) whose prefix is not a consecutive
    /// interval, or `None` when the order is single-peaked.
    pub fn single_peaked_violation(&self) -> Option<usize> {
        let mut lo = self.ranking[0];
        let mut hi = lo;
        for (idx, &v) in self.ranking.iter().enumerate().skip(1) {
            if v == lo.wrapping_sub(1) {
                lo = v;
            } else if v == hi + 1 {
                hi = v;
            } else {
                return Some(idx + 1);
            }
        }
        None
    }

    /// True iff every ideal is a consecutive interval of `{1..n}`.
    pub fn is_single_peaked(&self) -> bool {
        self.single_peaked_violation().is_none()
    }

    /// The peak alternative when the order is single-peaked.
    pub fn peak(&self) -> Option<u32> {
        if self.is_single_peaked() {
            Some(self.top())
        } else {
            None
        }
    }

    /// The induced ranking on `subset`, original labels retained.
    ///
    /// Relative order is preserved: for any `i`, `j` in the subset, `i`
    /// precedes `j` in the result iff it does in `self`.
    pub fn restrict(&self, subset: &BTreeSet<u32>) -> Result<Vec<u32>, OrderError> {
        if subset.is_empty() {
            return Err(OrderError::EmptySubset);
        }
        for &v in subset {
            if v < 1 || v as usize > self.n() {
                return Err(OrderError::SubsetOutOfRange { value: v, n: self.n() });
            }
        }
        Ok(self
            .ranking
            .iter()
            .copied()
            .filter(|v| subset.contains(v))
            .collect())
    }

    /// The ranking reversed; its inversion set is the complement of this
    /// order's within Ω.
    pub fn reverse(&self) -> LinearOrder {
        let mut ranking = self.ranking.clone();
        ranking.reverse();
        LinearOrder { ranking }
    }
}

/// Compact digits for n ≤ 9, comma-separated otherwise.
impl fmt::Display for LinearOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() <= 9 {
            for v in &self.ranking {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.ranking.iter().map(u32::to_string).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

/// Accepts compact digit strings ("2314", only for n ≤ 9), comma-separated
/// values (`2,3,1,4`), and bracketed arrays (`[2,3,1,4]`).
impl FromStr for LinearOrder {
    type Err = OrderError;

    fn from_str(s: &str) -> Result<Self, OrderError> {
        let trimmed = s.trim();
        let body = trimmed
            .strip_prefix('[')
            .and_then(|rest| rest.strip_suffix(']'))
            .unwrap_or(trimmed);
        let parse_err = |reason: &str| OrderError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        if body.is_empty() {
            return Err(parse_err("no values"));
        }
        let values: Vec<u32> = if body.contains(',') {
            body.split(',')
                .map(|part| part.trim().parse::<u32>())
                .collect::<Result<_, _>>()
                .map_err(|e| parse_err(&e.to_string()))?
        } else if body.bytes().all(|b| b.is_ascii_digit()) {
            // one alternative per digit; n ≥ 10 must use the comma form
            body.bytes().map(|b| u32::from(b - b'0')).collect()
        } else {
            return Err(parse_err("expected digits or comma-separated integers"));
        };
        LinearOrder::new(values)
    }
}

impl Serialize for LinearOrder {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.ranking.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LinearOrder {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let values = Vec::<u32>::deserialize(deserializer)?;
        LinearOrder::new(values).map_err(D::Error::custom)
    }
}

/// Subset of Ω = {(i, j) | 1 ≤ i < j ≤ n}, backed by a fixed-width bitset
/// over the triangular pair indexing. The observable contract is the pair
/// set returned by [`InversionSet::pairs`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InversionSet {
    n: usize,
    bits: Vec<u64>,
}

impl InversionSet {
    /// The empty inversion set over `{1..n}`.
    pub fn empty(n: usize) -> Self {
        assert!(n >= 1, "inversion sets need at least one alternative");
        let pair_count = n * (n - 1) / 2;
        Self {
            n,
            bits: vec![0; pair_count.div_ceil(64).max(1)],
        }
    }

    /// The full set Ω of all n(n-1)/2 pairs.
    pub fn full(n: usize) -> Self {
        let mut set = Self::empty(n);
        for j in 2..=n as u32 {
            for i in 1..j {
                set.insert(i, j);
            }
        }
        set
    }

    fn index(&self, i: u32, j: u32) -> usize {
        debug_assert!(1 <= i && i < j && j as usize <= self.n);
        let (i, j) = (i as usize, j as usize);
        (j - 1) * (j - 2) / 2 + (i - 1)
    }

    /// Number of alternatives the pair universe ranges over.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Adds the pair `(i, j)`; requires `1 ≤ i < j ≤ n`.
    pub fn insert(&mut self, i: u32, j: u32) {
        let idx = self.index(i, j);
        self.bits[idx / 64] |= 1 << (idx % 64);
    }

    /// True iff `(i, j)` is in the set.
    pub fn contains(&self, i: u32, j: u32) -> bool {
        let idx = self.index(i, j);
        self.bits[idx / 64] & (1 << (idx % 64)) != 0
    }

    /// Number of pairs in the set.
    pub fn len(&self) -> usize {
        self.bits.iter().map(|b| b.count_ones() as usize).sum()
    }

    /// True iff no pair is present.
    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&b| b == 0)
    }

    /// Subset test against another set over the same universe.
    pub fn is_subset_of(&self, other: &InversionSet) -> bool {
        assert_eq!(self.n, other.n, "inversion sets over different universes");
        self.bits
            .iter()
            .zip(&other.bits)
            .all(|(a, b)| a & !b == 0)
    }

    /// True iff `other` has exactly this set plus one more pair.
    pub fn is_covered_by(&self, other: &InversionSet) -> bool {
        other.len() == self.len() + 1 && self.is_subset_of(other)
    }

    /// Complement within Ω.
    pub fn complement(&self) -> InversionSet {
        let mut out = Self::empty(self.n);
        for j in 2..=self.n as u32 {
            for i in 1..j {
                if !self.contains(i, j) {
                    out.insert(i, j);
                }
            }
        }
        out
    }

    /// All pairs in the set, sorted by `(i, j)`.
    pub fn pairs(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.len());
        for j in 2..=self.n as u32 {
            for i in 1..j {
                if self.contains(i, j) {
                    out.push((i, j));
                }
            }
        }
        out.sort_unstable();
        out
    }
}
