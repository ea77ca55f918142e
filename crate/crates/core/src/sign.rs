//! The ± encoding of single-peaked orders and the two operations that walk
//! the Bruhat cover digraph.
//!
//! A single-peaked order grows outward from its peak: each step appends the
//! alternative just above the current prefix interval (`+`) or just below it
//! (`-`). Recording those choices yields a length n−1 sign sequence that
//! determines the order, and conversely every sign sequence decodes to a
//! single-peaked order. The sign at index i (1-based) describes the
//! alternative at preference position i+1; position-valued APIs therefore
//! speak in preference positions 2..=n.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::order::LinearOrder;

/// Errors from sign-sequence operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SignError {
    #[error("not single-peaked: the prefix ending at preference position {position} is not an interval")]
    NotSinglePeaked { position: usize },
    #[error("no signs to flip (single alternative)")]
    NoSigns,
    #[error("signs at indices {index} and {} are equal", index + 1)]
    EqualAdjacentSigns { index: usize },
    #[error("sign index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("cannot parse sign sequence from {input:?}: expected only '+' and '-'")]
    Parse { input: String },
}

/// One step of the interval-growing construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    /// The next alternative extends the prefix interval upward.
    Plus,
    /// The next alternative extends the prefix interval downward.
    Minus,
}

impl Sign {
    fn flipped(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// Whether a neighbor in the cover digraph gained or lost an inversion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Inversion count increased by one.
    Up,
    /// Inversion count decreased by one.
    Down,
}

/// A sequence over {+, -} of length n−1 encoding a single-peaked order on
/// `{1..n}`; empty for n = 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignSeq {
    signs: Vec<Sign>,
}

impl SignSeq {
    pub fn new(signs: Vec<Sign>) -> Self {
        Self { signs }
    }

    /// Number of alternatives of the decoded order (= length + 1).
    pub fn n(&self) -> usize {
        self.signs.len() + 1
    }

    /// Number of signs.
    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    /// Top alternative of the decoded order. Each `-` consumes one
    /// alternative below the top, so top = #Minus + 1.
    pub fn top(&self) -> u32 {
        self.signs.iter().filter(|&&s| s == Sign::Minus).count() as u32 + 1
    }

    /// Encodes a single-peaked order; walks the prefix interval and records
    /// whether each step extended it upward or downward.
    pub fn encode(order: &LinearOrder) -> Result<SignSeq, SignError> {
        if let Some(position) = order.single_peaked_violation() {
            return Err(SignError::NotSinglePeaked { position });
        }
        let ranking = order.ranking();
        let mut lo = ranking[0];
        let mut hi = lo;
        let mut signs = Vec::with_capacity(order.n() - 1);
        for &v in &ranking[1..] {
            if v == hi + 1 {
                signs.push(Sign::Plus);
                hi = v;
            } else {
                debug_assert_eq!(v + 1, lo);
                signs.push(Sign::Minus);
                lo = v;
            }
        }
        Ok(SignSeq { signs })
    }

    /// Builds the single-peaked order this sequence denotes. Starts at the
    /// top alternative and extends the interval one step per sign.
    pub fn decode(&self) -> LinearOrder {
        let top = self.top();
        let mut lo = top;
        let mut hi = top;
        let mut ranking = Vec::with_capacity(self.n());
        ranking.push(top);
        for sign in &self.signs {
            match sign {
                Sign::Plus => {
                    hi += 1;
                    ranking.push(hi);
                }
                Sign::Minus => {
                    lo -= 1;
                    ranking.push(lo);
                }
            }
        }
        LinearOrder::new(ranking).expect("decoded rankings are permutations by construction")
    }

    /// Preference positions (2..=n) where a `-` step occurs.
    pub fn negative_positions(&self) -> BTreeSet<usize> {
        self.positions_of(Sign::Minus)
    }

    /// Preference positions (2..=n) where a `+` step occurs; the complement
    /// of the negative positions within 2..=n.
    pub fn positive_positions(&self) -> BTreeSet<usize> {
        self.positions_of(Sign::Plus)
    }

    fn positions_of(&self, wanted: Sign) -> BTreeSet<usize> {
        self.signs
            .iter()
            .enumerate()
            .filter(|&(_, &s)| s == wanted)
            .map(|(idx, _)| idx + 2)
            .collect()
    }

    /// Number of inversions of the decoded order: each `-` at preference
    /// position p contributes p−1 inversion pairs, `+` steps contribute none.
    pub fn inversion_count(&self) -> usize {
        self.negative_positions().iter().map(|p| p - 1).sum()
    }

    /// Toggles the first sign, swapping the top two preferred alternatives.
    /// Changes the inversion count by exactly one (+1 for Plus→Minus).
    pub fn flip_first(&self) -> Result<SignSeq, SignError> {
        if self.signs.is_empty() {
            return Err(SignError::NoSigns);
        }
        let mut signs = self.signs.clone();
        signs[0] = signs[0].flipped();
        Ok(SignSeq { signs })
    }

    /// Swaps the opposite signs at 1-based indices `i` and `i+1`. Changes
    /// the inversion count by exactly one (−1 for `+-`→`-+`) and keeps the
    /// top alternative.
    pub fn swap_opposite(&self, i: usize) -> Result<SignSeq, SignError> {
        if i < 1 || i >= self.signs.len() {
            return Err(SignError::IndexOutOfRange {
                index: i,
                max: self.signs.len().saturating_sub(1),
            });
        }
        if self.signs[i - 1] == self.signs[i] {
            return Err(SignError::EqualAdjacentSigns { index: i });
        }
        let mut signs = self.signs.clone();
        signs.swap(i - 1, i);
        Ok(SignSeq { signs })
    }

    /// Every result of [`flip_first`](Self::flip_first) and every legal
    /// [`swap_opposite`](Self::swap_opposite), tagged by whether it gained
    /// or lost an inversion. These are exactly the cover-digraph neighbors
    /// of the decoded order within the full single-peaked domain.
    pub fn neighbors(&self) -> Vec<(SignSeq, Direction)> {
        let mut out = Vec::new();
        let here = self.inversion_count();
        let mut push = |seq: SignSeq| {
            let direction = if seq.inversion_count() > here {
                Direction::Up
            } else {
                Direction::Down
            };
            out.push((seq, direction));
        };
        if let Ok(flipped) = self.flip_first() {
            push(flipped);
        }
        for i in 1..self.signs.len() {
            if let Ok(swapped) = self.swap_opposite(i) {
                push(swapped);
            }
        }
        out
    }
}

impl fmt::Display for SignSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for sign in &self.signs {
            f.write_str(match sign {
                Sign::Plus => "+",
                Sign::Minus => "-",
            })?;
        }
        Ok(())
    }
}

/// Parses strings matching `^[+-]*$`; the empty string is the n = 1 sequence.
impl FromStr for SignSeq {
    type Err = SignError;

    fn from_str(s: &str) -> Result<Self, SignError> {
        s.chars()
            .map(|c| match c {
                '+' => Ok(Sign::Plus),
                '-' => Ok(Sign::Minus),
                _ => Err(SignError::Parse {
                    input: s.to_string(),
                }),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(SignSeq::new)
    }
}
