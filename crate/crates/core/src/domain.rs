//! Preference domains, their property checkers, and exhaustive Condorcet
//! verification through majority relations.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::order::LinearOrder;
use crate::sign::{Sign, SignSeq};

/// Default cap on `n` for single-peaked enumeration.
pub const DEFAULT_MAX_ENUM_N: usize = 24;
/// Default cap on the number of profiles a Condorcet sweep may visit.
pub const DEFAULT_MAX_PROFILES: u64 = 10_000_000;

/// Errors from domain and profile operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DomainError {
    #[error("domains need at least one alternative")]
    NoAlternatives,
    #[error("order {order} has {found} alternatives, domain expects {expected}")]
    InconsistentN {
        order: String,
        expected: usize,
        found: usize,
    },
    #[error("duplicate order {order} in domain")]
    DuplicateOrder { order: String },
    #[error("resource limit exceeded: {what} ({requested} > {limit})")]
    ResourceLimit {
        what: &'static str,
        requested: u128,
        limit: u128,
    },
    #[error("profile has an even number of voters (m = {m}); majority ties would be possible")]
    EvenProfile { m: usize },
    #[error("profile has no voters")]
    EmptyProfile,
    #[error("invalid triple ({i}, {j}, {k}): need 1 <= i < j < k <= {n}")]
    InvalidTriple { i: u32, j: u32, k: u32, n: usize },
    #[error("invalid JSON: {0}")]
    Json(String),
}

/// A duplicate-free set of linear orders over a common alternative set,
/// kept sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Domain {
    n: usize,
    orders: Vec<LinearOrder>,
}

#[derive(Serialize, Deserialize)]
struct DomainJson {
    n: usize,
    orders: Vec<LinearOrder>,
}

impl Domain {
    /// Builds a domain over `{1..n}`; rejects duplicates and mismatched
    /// alternative counts. Orders are sorted on construction.
    pub fn new(n: usize, mut orders: Vec<LinearOrder>) -> Result<Self, DomainError> {
        if n == 0 {
            return Err(DomainError::NoAlternatives);
        }
        for order in &orders {
            if order.n() != n {
                return Err(DomainError::InconsistentN {
                    order: order.to_string(),
                    expected: n,
                    found: order.n(),
                });
            }
        }
        orders.sort_unstable();
        for pair in orders.windows(2) {
            if pair[0] == pair[1] {
                return Err(DomainError::DuplicateOrder {
                    order: pair[0].to_string(),
                });
            }
        }
        Ok(Self { n, orders })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Member orders in lexicographic order.
    pub fn orders(&self) -> &[LinearOrder] {
        &self.orders
    }

    pub fn len(&self) -> usize {
        self.orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn contains(&self, order: &LinearOrder) -> bool {
        self.orders.binary_search(order).is_ok()
    }

    /// Parses `{"n": 4, "orders": [[1,2,3,4], ...]}`.
    pub fn from_json(s: &str) -> Result<Self, DomainError> {
        let raw: DomainJson =
            serde_json::from_str(s).map_err(|e| DomainError::Json(e.to_string()))?;
        Domain::new(raw.n, raw.orders)
    }

    pub fn to_json(&self) -> String {
        serde_json::json!({ "n": self.n, "orders": self.orders }).to_string()
    }
}

/// All single-peaked orders on `{1..n}`, one per sign sequence, sorted
/// lexicographically. Uses the default enumeration cap.
pub fn enumerate_sp(n: usize) -> Result<Domain, DomainError> {
    enumerate_sp_capped(n, DEFAULT_MAX_ENUM_N)
}

/// [`enumerate_sp`] with an explicit cap on `n`.
pub fn enumerate_sp_capped(n: usize, max_n: usize) -> Result<Domain, DomainError> {
    assert!(n >= 1, "domains need at least one alternative");
    if n > max_n {
        return Err(DomainError::ResourceLimit {
            what: "single-peaked enumeration size",
            requested: n as u128,
            limit: max_n as u128,
        });
    }
    let count = 1u64
        .checked_shl(n as u32 - 1)
        .ok_or(DomainError::ResourceLimit {
            what: "single-peaked enumeration size",
            requested: n as u128,
            limit: 64,
        })?;
    let mut orders = Vec::with_capacity(count as usize);
    for mask in 0..count {
        let signs: Vec<Sign> = (0..n - 1)
            .map(|b| {
                if mask >> b & 1 == 1 {
                    Sign::Minus
                } else {
                    Sign::Plus
                }
            })
            .collect();
        orders.push(SignSeq::new(signs).decode());
    }
    orders.sort_unstable();
    Ok(Domain { n, orders })
}

/// Entry `i` (1-based) is the number of single-peaked orders on `{1..n}`
/// with top alternative `i`, which is C(n−1, i−1); entries sum to 2^(n−1).
pub fn count_by_top(n: usize) -> Vec<u64> {
    assert!(n >= 1, "domains need at least one alternative");
    let mut out = Vec::with_capacity(n);
    let mut c: u128 = 1;
    for i in 0..n {
        out.push(u64::try_from(c).expect("binomial coefficient exceeds u64"));
        if i + 1 < n {
            c = c * (n - 1 - i) as u128 / (i as u128 + 1);
        }
    }
    out
}

/// True iff every alternative is the top choice of some member order.
pub fn is_minimally_rich(domain: &Domain) -> bool {
    let tops: BTreeSet<u32> = domain.orders.iter().map(LinearOrder::top).collect();
    tops.len() == domain.n
}

/// True iff the domain contains both the identity order and its reversal.
pub fn has_maximal_width(domain: &Domain) -> bool {
    domain.contains(&LinearOrder::identity(domain.n))
        && domain.contains(&LinearOrder::reversal(domain.n))
}

/// How a domain's restriction to one triple behaves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TripleClass {
    /// The middle alternative is never ranked last.
    SinglePeaked,
    /// The middle alternative is never ranked first.
    SinglePit,
    /// Both hold (possible only for at most two distinct restrictions).
    Both,
    Neither,
}

/// Restricts every member to `{i, j, k}` (with `i < j < k` as the induced
/// axis) and classifies the restriction set.
pub fn classify_triple_restriction(
    domain: &Domain,
    triple: (u32, u32, u32),
) -> Result<TripleClass, DomainError> {
    let (i, j, k) = triple;
    if !(1 <= i && i < j && j < k && k as usize <= domain.n) {
        return Err(DomainError::InvalidTriple {
            i,
            j,
            k,
            n: domain.n,
        });
    }
    let subset: BTreeSet<u32> = [i, j, k].into();
    let mut peaked = true;
    let mut pit = true;
    for order in &domain.orders {
        let induced = order
            .restrict(&subset)
            .expect("triple was validated against the domain");
        peaked &= induced[2] != j;
        pit &= induced[0] != j;
        if !peaked && !pit {
            return Ok(TripleClass::Neither);
        }
    }
    Ok(match (peaked, pit) {
        (true, true) => TripleClass::Both,
        (true, false) => TripleClass::SinglePeaked,
        (false, true) => TripleClass::SinglePit,
        (false, false) => unreachable!("handled by the early return"),
    })
}

/// True iff every triple restriction is single-peaked or single-pit.
pub fn is_peak_pit(domain: &Domain) -> bool {
    let n = domain.n as u32;
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                let class = classify_triple_restriction(domain, (i, j, k))
                    .expect("generated triples are valid");
                if class == TripleClass::Neither {
                    return false;
                }
            }
        }
    }
    true
}

/// A nonempty sequence of voter orders over a common alternative set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profile {
    voters: Vec<LinearOrder>,
}

#[derive(Serialize, Deserialize)]
struct ProfileJson {
    voters: Vec<LinearOrder>,
}

impl Profile {
    pub fn new(voters: Vec<LinearOrder>) -> Result<Self, DomainError> {
        let first = voters.first().ok_or(DomainError::EmptyProfile)?;
        let n = first.n();
        for voter in &voters {
            if voter.n() != n {
                return Err(DomainError::InconsistentN {
                    order: voter.to_string(),
                    expected: n,
                    found: voter.n(),
                });
            }
        }
        Ok(Self { voters })
    }

    /// Number of voters.
    pub fn m(&self) -> usize {
        self.voters.len()
    }

    /// Number of alternatives.
    pub fn n(&self) -> usize {
        self.voters[0].n()
    }

    pub fn voters(&self) -> &[LinearOrder] {
        &self.voters
    }

    /// Parses `{"voters": [[1,2,3], ...]}`.
    pub fn from_json(s: &str) -> Result<Self, DomainError> {
        let raw: ProfileJson =
            serde_json::from_str(s).map_err(|e| DomainError::Json(e.to_string()))?;
        Profile::new(raw.voters)
    }

    pub fn to_json(&self) -> String {
        serde_json::json!({ "voters": self.voters }).to_string()
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.voters.iter().map(LinearOrder::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// The strict pairwise majority comparison of a profile: `(x, y)` present
/// means strictly more than half the voters rank `x` above `y`. Complete
/// for odd voter counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MajorityRelation {
    n: usize,
    prefers: BTreeSet<(u32, u32)>,
}

impl MajorityRelation {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Winner/loser pairs, sorted.
    pub fn prefers(&self) -> &BTreeSet<(u32, u32)> {
        &self.prefers
    }

    /// True iff a strict majority prefers `x` to `y`.
    pub fn prefers_over(&self, x: u32, y: u32) -> bool {
        self.prefers.contains(&(x, y))
    }

    /// Depth-first search for a directed cycle in the majority digraph.
    pub fn has_majority_cycle(&self) -> bool {
        #[derive(Clone, Copy, PartialEq)]
        enum State {
            New,
            Active,
            Done,
        }
        let mut adjacency = vec![Vec::new(); self.n + 1];
        for &(x, y) in &self.prefers {
            adjacency[x as usize].push(y as usize);
        }
        let mut state = vec![State::New; self.n + 1];
        for start in 1..=self.n {
            if state[start] != State::New {
                continue;
            }
            // iterative DFS; stack holds (node, next child index)
            let mut stack = vec![(start, 0usize)];
            state[start] = State::Active;
            while let Some(&mut (node, ref mut child)) = stack.last_mut() {
                if *child < adjacency[node].len() {
                    let next = adjacency[node][*child];
                    *child += 1;
                    match state[next] {
                        State::Active => return true,
                        State::New => {
                            state[next] = State::Active;
                            stack.push((next, 0));
                        }
                        State::Done => {}
                    }
                } else {
                    state[node] = State::Done;
                    stack.pop();
                }
            }
        }
        false
    }
}

/// Builds the majority relation of a profile; the voter count must be odd
/// so that every pairwise comparison has a strict winner.
pub fn majority_relation(profile: &Profile) -> Result<MajorityRelation, DomainError> {
    if profile.m().is_multiple_of(2) {
        return Err(DomainError::EvenProfile { m: profile.m() });
    }
    let positions: Vec<Vec<usize>> = profile
        .voters
        .iter()
        .map(position_table)
        .collect();
    Ok(majority_from_positions(profile.n(), &positions))
}

fn position_table(order: &LinearOrder) -> Vec<usize> {
    let mut table = vec![0; order.n() + 1];
    for (pos, &v) in order.ranking().iter().enumerate() {
        table[v as usize] = pos;
    }
    table
}

fn majority_from_positions(n: usize, positions: &[Vec<usize>]) -> MajorityRelation {
    let m = positions.len();
    let mut prefers = BTreeSet::new();
    for x in 1..=n as u32 {
        for y in x + 1..=n as u32 {
            let x_wins = positions
                .iter()
                .filter(|table| table[x as usize] < table[y as usize])
                .count();
            if 2 * x_wins > m {
                prefers.insert((x, y));
            } else {
                prefers.insert((y, x));
            }
        }
    }
    MajorityRelation { n, prefers }
}

/// Outcome of an exhaustive Condorcet sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CondorcetCheck {
    /// Profiles examined before stopping.
    pub profiles_checked: u64,
    /// First profile (in lexicographic voter order) with a majority cycle.
    pub witness: Option<Profile>,
}

impl CondorcetCheck {
    pub fn is_condorcet(&self) -> bool {
        self.witness.is_none()
    }
}

/// Sweeps every profile in `domain^m` (Cartesian power, first voter varies
/// slowest) and reports the first majority cycle found, if any. Uses the
/// default profile budget.
pub fn is_condorcet_brute(domain: &Domain, m: usize) -> Result<CondorcetCheck, DomainError> {
    is_condorcet_brute_capped(domain, m, DEFAULT_MAX_PROFILES)
}

/// [`is_condorcet_brute`] with an explicit profile budget.
pub fn is_condorcet_brute_capped(
    domain: &Domain,
    m: usize,
    max_profiles: u64,
) -> Result<CondorcetCheck, DomainError> {
    if m.is_multiple_of(2) {
        return Err(DomainError::EvenProfile { m });
    }
    let size = domain.len();
    if size == 0 {
        return Ok(CondorcetCheck {
            profiles_checked: 0,
            witness: None,
        });
    }
    let total = (size as u128)
        .checked_pow(m as u32)
        .filter(|&t| t <= max_profiles as u128)
        .ok_or(DomainError::ResourceLimit {
            what: "profile sweep size",
            requested: (size as u128).checked_pow(m as u32).unwrap_or(u128::MAX),
            limit: max_profiles as u128,
        })?;

    let positions: Vec<Vec<usize>> = domain.orders.iter().map(position_table).collect();
    let mut indices = vec![0usize; m];
    let mut chosen: Vec<Vec<usize>> = vec![positions[0].clone(); m];
    let mut checked = 0u64;
    loop {
        checked += 1;
        let relation = majority_from_positions(domain.n, &chosen);
        if relation.has_majority_cycle() {
            let voters = indices
                .iter()
                .map(|&idx| domain.orders[idx].clone())
                .collect();
            return Ok(CondorcetCheck {
                profiles_checked: checked,
                witness: Some(Profile::new(voters).expect("witness voters share n")),
            });
        }
        // odometer increment, last voter fastest
        let mut pos = m;
        loop {
            if pos == 0 {
                debug_assert_eq!(u128::from(checked), total);
                return Ok(CondorcetCheck {
                    profiles_checked: checked,
                    witness: None,
                });
            }
            pos -= 1;
            indices[pos] += 1;
            if indices[pos] < size {
                chosen[pos] = positions[indices[pos]].clone();
                break;
            }
            indices[pos] = 0;
            chosen[pos] = positions[0].clone();
        }
    }
}
