//! Graph-class recognition with witnesses.

mod outerplanar;

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use outerplanar::{
    ham_cycle_from, ham_cycle_outerplanar, is_outerplanar, leg_decomposition, recognize_outerplanar,
    HamCycle, LegDecomposition, MinorModel, MinorTarget,
};

use crate::error::{LtdError, Result};
use crate::graph::{Graph, VertexSet};
use crate::structure::block_cut_tree;

/// The five classes with proven bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphClass {
    Cobipartite,
    Split,
    Block,
    Subcubic,
    Outerplanar,
}

impl GraphClass {
    pub const ALL: [GraphClass; 5] = [
        GraphClass::Cobipartite,
        GraphClass::Split,
        GraphClass::Block,
        GraphClass::Subcubic,
        GraphClass::Outerplanar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GraphClass::Cobipartite => "cobipartite",
            GraphClass::Split => "split",
            GraphClass::Block => "block",
            GraphClass::Subcubic => "subcubic",
            GraphClass::Outerplanar => "outerplanar",
        }
    }

    pub fn contains(self, g: &Graph) -> bool {
        match self {
            GraphClass::Cobipartite => recognize_cobipartite(g).is_some(),
            GraphClass::Split => recognize_split(g).is_some(),
            GraphClass::Block => recognize_block_graph(g),
            GraphClass::Subcubic => recognize_subcubic(g),
            GraphClass::Outerplanar => is_outerplanar(g),
        }
    }
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GraphClass {
    type Err = LtdError;

    fn from_str(s: &str) -> Result<Self> {
        GraphClass::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| LtdError::InvalidParameter(format!("unknown graph class '{s}'")))
    }
}

/// Every class among the five that contains `g`.
pub fn classes_of(g: &Graph) -> Vec<GraphClass> {
    GraphClass::ALL.into_iter().filter(|c| c.contains(g)).collect()
}

/// Evidence of class membership (or of its failure).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClassWitness {
    Cobipartite { c1: VertexSet, c2: VertexSet },
    Split { q: VertexSet, s: VertexSet },
    BlockGraph,
    Subcubic,
    Outerplanar,
    None { reason: String, minor: Option<MinorModel> },
}

impl ClassWitness {
    /// Structural validation of partition witnesses against `g`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let bad = |msg: &str| Err(LtdError::InvalidWitness(msg.to_string()));
        match self {
            ClassWitness::Cobipartite { c1, c2 } => {
                if !is_partition(g, c1, c2) {
                    return bad("cobipartite parts do not partition the vertex set");
                }
                if !is_clique(g, c1) || !is_clique(g, c2) {
                    return bad("cobipartite part is not a clique");
                }
                Ok(())
            }
            ClassWitness::Split { q, s } => {
                if !is_partition(g, q, s) {
                    return bad("split parts do not partition the vertex set");
                }
                if !is_clique(g, q) {
                    return bad("split part Q is not a clique");
                }
                if !is_stable(g, s) {
                    return bad("split part S is not stable");
                }
                Ok(())
            }
            ClassWitness::None { minor: Some(m), .. } => {
                if m.verify(g) {
                    Ok(())
                } else {
                    bad("minor model is invalid")
                }
            }
            _ => Ok(()),
        }
    }
}

fn is_partition(g: &Graph, a: &VertexSet, b: &VertexSet) -> bool {
    a.check_in(g.order()).is_ok()
        && b.check_in(g.order()).is_ok()
        && a.len() + b.len() == g.order()
        && a.iter().all(|v| !b.contains(v))
}

pub fn is_clique(g: &Graph, c: &VertexSet) -> bool {
    let s = c.as_slice();
    s.iter().enumerate().all(|(i, &u)| s[i + 1..].iter().all(|&v| g.has_edge(u, v)))
}

pub fn is_stable(g: &Graph, c: &VertexSet) -> bool {
    let s = c.as_slice();
    s.iter().enumerate().all(|(i, &u)| s[i + 1..].iter().all(|&v| !g.has_edge(u, v)))
}

/// Partition into two cliques via a 2-colouring of the complement, each
/// complement component coloured from its smallest vertex (which lands in
/// `c1`).
pub fn recognize_cobipartite(g: &Graph) -> Option<ClassWitness> {
    let n = g.order();
    let mut colour = vec![u8::MAX; n];
    for s in 0..n {
        if colour[s] != u8::MAX {
            continue;
        }
        colour[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for w in 0..n {
                if w == v || g.has_edge(v, w) {
                    continue;
                }
                if colour[w] == u8::MAX {
                    colour[w] = 1 - colour[v];
                    queue.push_back(w);
                } else if colour[w] == colour[v] {
                    return None;
                }
            }
        }
    }
    let c1 = (0..n).filter(|&v| colour[v] == 0).collect();
    let c2 = (0..n).filter(|&v| colour[v] == 1).collect();
    Some(ClassWitness::Cobipartite { c1, c2 })
}

/// Split partition from the degree sequence: with degrees sorted
/// decreasingly and `m = max{i : d_i >= i - 1}`, the graph is split iff
/// `sum_{i<=m} d_i = m(m-1) + sum_{i>m} d_i`, and then the `m` vertices of
/// largest degree form the clique (ties broken by smaller id).
pub fn recognize_split(g: &Graph) -> Option<ClassWitness> {
    let n = g.order();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.deg(v)), v));
    let d: Vec<usize> = order.iter().map(|&v| g.deg(v)).collect();
    let m = (0..n).filter(|&i| d[i] >= i).map(|i| i + 1).max().unwrap_or(0);
    let head: usize = d[..m].iter().sum();
    let tail: usize = d[m..].iter().sum();
    if head != m * m.saturating_sub(1) + tail {
        return None;
    }
    let q: VertexSet = order[..m].iter().copied().collect();
    let s: VertexSet = order[m..].iter().copied().collect();
    let w = ClassWitness::Split { q, s };
    debug_assert!(w.validate(g).is_ok());
    Some(w)
}

/// True iff every block induces a clique.
pub fn recognize_block_graph(g: &Graph) -> bool {
    block_cut_tree(g).blocks.iter().all(|b| is_clique(g, b))
}

/// True iff the maximum degree is at most 3.
pub fn recognize_subcubic(g: &Graph) -> bool {
    g.max_degree() <= 3
}
