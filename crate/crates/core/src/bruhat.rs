//! The Bruhat order on linear orders (inclusion of inversion sets), cover
//! digraphs over domains, path search, and lattice verification.

use std::fmt::Write as _;

use thiserror::Error;

use crate::domain::Domain;
use crate::order::{InversionSet, LinearOrder};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BruhatError {
    #[error("orders have different alternative counts ({left} vs {right})")]
    MismatchedN { left: usize, right: usize },
    #[error("order {order} is not in the domain")]
    EndpointNotInDomain { order: String },
}

/// True iff `a`'s inversion set is contained in `b`'s.
pub fn leq(a: &LinearOrder, b: &LinearOrder) -> Result<bool, BruhatError> {
    if a.n() != b.n() {
        return Err(BruhatError::MismatchedN {
            left: a.n(),
            right: b.n(),
        });
    }
    Ok(a.inversions().is_subset_of(&b.inversions()))
}

/// Cover digraph of a domain: an arc from σ to τ whenever Inv(τ) is Inv(σ)
/// plus exactly one pair. Arcs strictly increase the inversion count, so the
/// digraph is acyclic and graded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruhatDigraph {
    nodes: Vec<LinearOrder>,
    levels: Vec<usize>,
    arcs: Vec<(usize, usize)>,
}

impl BruhatDigraph {
    /// Builds the cover digraph by comparing inversion sets of members one
    /// level apart (a cover adds exactly one inversion, so only adjacent
    /// inversion counts can be related).
    pub fn build(domain: &Domain) -> Self {
        let nodes: Vec<LinearOrder> = domain.orders().to_vec();
        let inversions: Vec<InversionSet> =
            nodes.iter().map(LinearOrder::inversions).collect();
        let levels: Vec<usize> = inversions.iter().map(InversionSet::len).collect();

        let max_level = levels.iter().copied().max().unwrap_or(0);
        let mut by_level = vec![Vec::new(); max_level + 1];
        for (idx, &level) in levels.iter().enumerate() {
            by_level[level].push(idx);
        }

        let mut arcs = Vec::new();
        for window in by_level.windows(2) {
            for &low in &window[0] {
                for &high in &window[1] {
                    if inversions[low].is_subset_of(&inversions[high]) {
                        arcs.push((low, high));
                    }
                }
            }
        }
        arcs.sort_unstable();
        Self { nodes, levels, arcs }
    }

    /// Member orders, sorted lexicographically.
    pub fn nodes(&self) -> &[LinearOrder] {
        &self.nodes
    }

    /// Cover arcs as index pairs into [`nodes`](Self::nodes), sorted.
    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    /// Cover arcs as order pairs.
    pub fn arc_orders(&self) -> impl Iterator<Item = (&LinearOrder, &LinearOrder)> {
        self.arcs
            .iter()
            .map(|&(a, b)| (&self.nodes[a], &self.nodes[b]))
    }

    /// Inversion count of each node.
    pub fn levels(&self) -> &[usize] {
        &self.levels
    }

    fn node_index(&self, order: &LinearOrder) -> Option<usize> {
        self.nodes.binary_search(order).ok()
    }

    /// A directed cover path from `from` to `to`, or `None` when no path
    /// exists. All arcs are unit steps, so every path has length
    /// |Inv(to)| − |Inv(from)|; among them the walk greedily takes the
    /// lexicographically smallest next ranking that can still reach `to`.
    pub fn find_path(
        &self,
        from: &LinearOrder,
        to: &LinearOrder,
    ) -> Result<Option<Vec<LinearOrder>>, BruhatError> {
        let start = self
            .node_index(from)
            .ok_or_else(|| BruhatError::EndpointNotInDomain {
                order: from.to_string(),
            })?;
        let goal = self
            .node_index(to)
            .ok_or_else(|| BruhatError::EndpointNotInDomain {
                order: to.to_string(),
            })?;

        let mut successors = vec![Vec::new(); self.nodes.len()];
        let mut predecessors = vec![Vec::new(); self.nodes.len()];
        for &(a, b) in &self.arcs {
            successors[a].push(b);
            predecessors[b].push(a);
        }

        let mut reaches_goal = vec![false; self.nodes.len()];
        reaches_goal[goal] = true;
        let mut frontier = vec![goal];
        while let Some(node) = frontier.pop() {
            for &pred in &predecessors[node] {
                if !reaches_goal[pred] {
                    reaches_goal[pred] = true;
                    frontier.push(pred);
                }
            }
        }
        if !reaches_goal[start] {
            return Ok(None);
        }

        let mut path = vec![start];
        let mut current = start;
        while current != goal {
            // node indices are lexicographic, so the first viable successor
            // is the lexicographically smallest next ranking
            current = successors[current]
                .iter()
                .copied()
                .find(|&next| reaches_goal[next])
                .expect("a node that reaches the goal has a viable successor");
            path.push(current);
        }
        Ok(Some(path.into_iter().map(|i| self.nodes[i].clone()).collect()))
    }

    /// DOT text: one node per order labeled by its compact ranking string,
    /// one edge per cover arc, nodes grouped by inversion count. Output is
    /// byte-deterministic for a given domain.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph bruhat {\n  rankdir=BT;\n");
        let max_level = self.levels.iter().copied().max().unwrap_or(0);
        for level in 0..=max_level {
            let members: Vec<usize> = (0..self.nodes.len())
                .filter(|&i| self.levels[i] == level)
                .collect();
            if members.is_empty() {
                continue;
            }
            out.push_str("  { rank=same;");
            for idx in members {
                let _ = write!(out, " \"{}\";", self.nodes[idx]);
            }
            out.push_str(" }\n");
        }
        for &(a, b) in &self.arcs {
            let _ = writeln!(out, "  \"{}\" -> \"{}\";", self.nodes[a], self.nodes[b]);
        }
        out.push_str("}\n");
        out
    }
}

/// True iff the domain contains both the identity order and its reversal
/// and the cover digraph has a directed path between them.
pub fn is_semi_connected(domain: &Domain) -> bool {
    let alpha = LinearOrder::identity(domain.n());
    let omega = LinearOrder::reversal(domain.n());
    if !domain.contains(&alpha) || !domain.contains(&omega) {
        return false;
    }
    BruhatDigraph::build(domain)
        .find_path(&alpha, &omega)
        .expect("both endpoints were checked for membership")
        .is_some()
}

/// True iff every pair of members has a unique least upper bound and a
/// unique greatest lower bound inside the domain, by brute-force scan.
pub fn is_lattice(domain: &Domain) -> bool {
    let inversions: Vec<InversionSet> = domain
        .orders()
        .iter()
        .map(LinearOrder::inversions)
        .collect();
    let size = inversions.len();
    let mut below = vec![vec![false; size]; size];
    for a in 0..size {
        for b in 0..size {
            below[a][b] = inversions[a].is_subset_of(&inversions[b]);
        }
    }

    let has_extreme_bound = |a: usize, b: usize, upper: bool| -> bool {
        let candidates: Vec<usize> = (0..size)
            .filter(|&c| {
                if upper {
                    below[a][c] && below[b][c]
                } else {
                    below[c][a] && below[c][b]
                }
            })
            .collect();
        // a least upper bound (or greatest lower bound) is unique whenever
        // it exists, by antisymmetry
        candidates.iter().any(|&u| {
            candidates
                .iter()
                .all(|&v| if upper { below[u][v] } else { below[v][u] })
        })
    };

    for a in 0..size {
        for b in a..size {
            if !has_extreme_bound(a, b, true) || !has_extreme_bound(a, b, false) {
                return false;
            }
        }
    }
    true
}
