//! Verification of (locating-)total dominating sets and exact minimum search.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{LtdError, Result};
use crate::graph::{BitIter, Graph, VertexSet, BITSET_LIMIT};
use crate::structure::twin_report;

/// True iff every vertex of `g` has a neighbor in `d`.
pub fn is_td_set(g: &Graph, d: &VertexSet) -> bool {
    g.vertices().all(|v| g.neighbors(v).iter().any(|&w| d.contains(w)))
}

/// True iff `d` is a TD-set and the vertices outside `d` have pairwise
/// distinct neighborhoods within `d`.
pub fn is_ltd_set(g: &Graph, d: &VertexSet) -> bool {
    ltd_violation(g, d).is_none()
}

/// Why a set fails to be an LTD-set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// `vertex` has no neighbor in the set.
    Undominated { vertex: usize },
    /// Two vertices outside the set see the same part of it.
    Unlocated { u: usize, v: usize },
}

/// The first violation found, or `None` when `d` is an LTD-set.
/// Undominated vertices are reported before unlocated pairs.
pub fn ltd_violation(g: &Graph, d: &VertexSet) -> Option<Violation> {
    if let Some(vertex) = g
        .vertices()
        .find(|&v| !g.neighbors(v).iter().any(|&w| d.contains(w)))
    {
        return Some(Violation::Undominated { vertex });
    }
    let mut seen: BTreeMap<VertexSet, usize> = BTreeMap::new();
    for (v, trace) in location_profile(g, d).profiles {
        if let Some(&u) = seen.get(&trace) {
            return Some(Violation::Unlocated { u, v });
        }
        seen.insert(trace, v);
    }
    None
}

/// `N(v) ∩ D` for every vertex `v` outside `D`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocationProfile {
    pub profiles: BTreeMap<usize, VertexSet>,
}

pub fn location_profile(g: &Graph, d: &VertexSet) -> LocationProfile {
    let profiles = g
        .vertices()
        .filter(|&v| !d.contains(v))
        .map(|v| {
            let trace = g.neighbors(v).iter().copied().filter(|&w| d.contains(w)).collect();
            (v, trace)
        })
        .collect();
    LocationProfile { profiles }
}

/// Outcome of an exact minimum search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactResult {
    pub value: usize,
    pub witness: VertexSet,
    /// False when the node budget ran out; `witness` is then only a valid
    /// (not necessarily minimum) set and `value` its size.
    pub optimality_checked: bool,
    /// Search nodes visited.
    pub nodes: u64,
}

/// Minimum LTD-set, lexicographically smallest among the minima.
///
/// `budget` caps the number of search nodes; when it is exhausted the
/// result carries a minimal (by inclusion) LTD-set and
/// `optimality_checked = false`.
pub fn exact_min_ltd(g: &Graph, budget: Option<u64>) -> Result<ExactResult> {
    Search::new(g, true, budget)?.run()
}

/// Minimum TD-set, lexicographically smallest among the minima.
pub fn exact_min_td(g: &Graph) -> Result<ExactResult> {
    Search::new(g, false, None)?.run()
}

/// Shrinks `d` to an inclusion-minimal LTD-set by trying to drop vertices
/// from the largest id down. `d` must already be an LTD-set.
pub fn prune_ltd(g: &Graph, d: &VertexSet) -> VertexSet {
    let mut d = d.clone();
    for v in d.as_slice().to_vec().into_iter().rev() {
        d.remove(v);
        if !is_ltd_set(g, &d) {
            d.insert(v);
        }
    }
    d
}

pub(crate) fn require_isolate_free(g: &Graph) -> Result<()> {
    match g.vertices().find(|&v| g.deg(v) == 0) {
        Some(v) => Err(LtdError::IsolatedVertex(v)),
        None => Ok(()),
    }
}

struct Search<'a> {
    g: &'a Graph,
    rows: Vec<u128>,
    n: usize,
    locating: bool,
    twin_classes: Vec<u128>,
    budget: Option<u64>,
    nodes: u64,
    exhausted: bool,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, locating: bool, budget: Option<u64>) -> Result<Self> {
        require_isolate_free(g)?;
        let n = g.order();
        if n == 0 {
            return Err(LtdError::InvalidParameter("graph has no vertices".into()));
        }
        if n > BITSET_LIMIT {
            return Err(LtdError::Unsupported(format!(
                "exact search is limited to {BITSET_LIMIT} vertices"
            )));
        }
        let twin_classes = if locating {
            twin_report(g)
                .classes
                .iter()
                .map(|c| c.vertices.to_bits())
                .collect()
        } else {
            Vec::new()
        };
        Ok(Search {
            g,
            rows: g.rows().expect("small graphs carry bitset rows").to_vec(),
            n,
            locating,
            twin_classes,
            budget,
            nodes: 0,
            exhausted: false,
        })
    }

    fn run(mut self) -> Result<ExactResult> {
        let twin_need: usize = self
            .twin_classes
            .iter()
            .map(|c| c.count_ones() as usize - 1)
            .sum();
        let mut k = twin_need.max(2).max(self.cover_bound(0, self.full_mask()));
        while k <= self.n {
            if let Some(bits) = self.dfs(0, 0, 0, k) {
                return Ok(ExactResult {
                    value: k,
                    witness: VertexSet::from_bits(bits),
                    optimality_checked: true,
                    nodes: self.nodes,
                });
            }
            if self.exhausted {
                let all: VertexSet = self.g.vertices().collect();
                let witness = if self.locating {
                    prune_ltd(self.g, &all)
                } else {
                    prune_td(self.g, &all)
                };
                return Ok(ExactResult {
                    value: witness.len(),
                    witness,
                    optimality_checked: false,
                    nodes: self.nodes,
                });
            }
            k += 1;
        }
        unreachable!("the whole vertex set of an isolate-free graph is an LTD-set")
    }

    fn full_mask(&self) -> u128 {
        if self.n == 128 {
            u128::MAX
        } else {
            (1u128 << self.n) - 1
        }
    }

    /// Lower bound on the vertices needed to dominate everything not yet
    /// dominated by `d`, using only vertices in `avail`.
    fn cover_bound(&self, d: u128, avail: u128) -> usize {
        let undominated: u128 = (0..self.n)
            .filter(|&v| self.rows[v] & d == 0)
            .fold(0, |acc, v| acc | (1u128 << v));
        if undominated == 0 {
            return 0;
        }
        let best = BitIter(avail)
            .map(|a| (self.rows[a] & undominated).count_ones())
            .max()
            .unwrap_or(0);
        if best == 0 {
            return usize::MAX;
        }
        (undominated.count_ones()).div_ceil(best) as usize
    }

    /// Include-first search over vertex ids; the first hit of size `k` is
    /// the lexicographically smallest `k`-set.
    fn dfs(&mut self, i: usize, d: u128, x: u128, r: usize) -> Option<u128> {
        self.nodes += 1;
        if let Some(b) = self.budget {
            if self.nodes > b {
                self.exhausted = true;
            }
        }
        if self.exhausted || r > self.n - i {
            return None;
        }
        let avail = if i >= 128 { 0 } else { self.full_mask() & !((1u128 << i) - 1) };
        if r == 0 {
            return self.accepts(d).then_some(d);
        }
        if (0..self.n).any(|v| self.rows[v] & (d | avail) == 0) {
            return None;
        }
        let cover = self.cover_bound(d, avail);
        if cover > r {
            return None;
        }
        if self.locating && !self.locating_feasible(d, x, avail, r) {
            return None;
        }
        let bit = 1u128 << i;
        if let Some(hit) = self.dfs(i + 1, d | bit, x, r - 1) {
            return Some(hit);
        }
        self.dfs(i + 1, d, x | bit, r)
    }

    fn locating_feasible(&self, d: u128, x: u128, avail: u128, r: usize) -> bool {
        let mut need = 0usize;
        for &class in &self.twin_classes {
            let excluded = (class & x).count_ones();
            if excluded >= 2 {
                return false;
            }
            let open = (class & avail).count_ones() as usize;
            need += if excluded == 0 { open.saturating_sub(1) } else { open };
        }
        if need > r {
            return false;
        }
        let xs: Vec<usize> = BitIter(x).collect();
        for (a, &u) in xs.iter().enumerate() {
            for &w in &xs[a + 1..] {
                let (nu, nw) = (self.rows[u], self.rows[w]);
                if nu & d == nw & d && (nu ^ nw) & avail == 0 {
                    return false;
                }
            }
        }
        true
    }

    fn accepts(&self, d: u128) -> bool {
        if (0..self.n).any(|v| self.rows[v] & d == 0) {
            return false;
        }
        if !self.locating {
            return true;
        }
        let mut traces: Vec<u128> = (0..self.n)
            .filter(|&v| d & (1u128 << v) == 0)
            .map(|v| self.rows[v] & d)
            .collect();
        traces.sort_unstable();
        traces.windows(2).all(|w| w[0] != w[1])
    }
}

fn prune_td(g: &Graph, d: &VertexSet) -> VertexSet {
    let mut d = d.clone();
    for v in d.as_slice().to_vec().into_iter().rev() {
        d.remove(v);
        if !is_td_set(g, &d) {
            d.insert(v);
        }
    }
    d
}
