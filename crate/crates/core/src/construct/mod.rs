//! Certified constructions of LTD-sets meeting the class bounds.
//!
//! Every public entry point verifies its output with `is_ltd_set` and the
//! size cap before returning; a failed check surfaces as
//! `LtdError::Invariant`, never as an unverified certificate.

mod auto;
mod block;
mod cobipartite;
mod outerplanar;
mod split;
mod subcubic;
mod tree;

use std::fmt;

use serde::Serialize;

use crate::error::{LtdError, Result};
use crate::graph::{Graph, VertexSet};
use crate::ltd::{is_ltd_set, ltd_violation, prune_ltd, Violation};

pub use auto::{construct_auto, construct_by_class, EXACT_LIMIT};
pub use block::{block_reduction, construct_block, BlockReduction};
pub use cobipartite::construct_cobipartite;
pub use outerplanar::{construct_outerplanar, smallbridge_construct};
pub use split::construct_split;
pub use subcubic::{construct_subcubic, degree_sequence_paths, DegreeSequencePath};
pub use tree::tree_min_ltd;

/// Which result produced a certificate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Theorem {
    Cobipartite,
    Split,
    Block,
    Subcubic,
    Outerplanar,
    /// Exhaustive search; the bound is the optimum itself.
    Exact,
    /// Union of per-component certificates.
    Componentwise,
}

impl Theorem {
    pub fn name(self) -> &'static str {
        match self {
            Theorem::Cobipartite => "cobipartite",
            Theorem::Split => "split",
            Theorem::Block => "block",
            Theorem::Subcubic => "subcubic",
            Theorem::Outerplanar => "outerplanar",
            Theorem::Exact => "exact",
            Theorem::Componentwise => "componentwise",
        }
    }

    /// Largest admissible certificate size on `n` vertices, for the five
    /// class theorems: `ceil(n/2)` for cobipartite graphs, the largest
    /// integer strictly below `2n/3` for split graphs, `floor(2n/3)`
    /// otherwise.
    pub fn bound(self, n: usize) -> Option<usize> {
        match self {
            Theorem::Cobipartite => Some(n.div_ceil(2)),
            Theorem::Split => Some((2 * n).div_ceil(3).saturating_sub(1)),
            Theorem::Block | Theorem::Subcubic | Theorem::Outerplanar => Some(2 * n / 3),
            Theorem::Exact | Theorem::Componentwise => None,
        }
    }
}

impl Theorem {
    /// The bound as a fraction `(numerator, denominator)`: `ceil(n/2)` for
    /// cobipartite graphs, `2n/3` for the other classes (strict for split
    /// graphs).
    pub fn rational_bound(self, n: usize) -> Option<(usize, usize)> {
        match self {
            Theorem::Cobipartite => Some((n.div_ceil(2), 1)),
            Theorem::Split | Theorem::Block | Theorem::Subcubic | Theorem::Outerplanar => Some((2 * n, 3)),
            Theorem::Exact | Theorem::Componentwise => None,
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A constructed LTD-set with the cap it was checked against.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub set: VertexSet,
    /// Largest size the theorem allows for this graph.
    pub bound: usize,
    pub theorem: Theorem,
    pub verified: bool,
    /// Construction steps in the order they were taken, using the input
    /// graph's vertex labels.
    pub trace: Vec<String>,
}

pub(crate) fn certify(
    g: &Graph,
    set: VertexSet,
    theorem: Theorem,
    bound: usize,
    trace: Vec<String>,
) -> Result<Certificate> {
    if !is_ltd_set(g, &set) {
        return Err(LtdError::Invariant(format!(
            "{theorem} construction produced {set}, which is not an LTD-set"
        )));
    }
    if set.len() > bound {
        return Err(LtdError::Invariant(format!(
            "{theorem} construction produced {} vertices, above the bound {bound}",
            set.len()
        )));
    }
    Ok(Certificate { set, bound, theorem, verified: true, trace })
}

/// Recursion state shared by the inductive constructions: the trace and
/// the label map from the current subgraph back to the input graph.
pub(crate) struct Trace {
    lines: Vec<String>,
    depth: usize,
}

impl Trace {
    pub(crate) fn new() -> Self {
        Trace { lines: Vec::new(), depth: 0 }
    }

    pub(crate) fn push(&mut self, line: String) {
        self.lines.push(format!("{}{line}", "  ".repeat(self.depth)));
    }

    pub(crate) fn nested<T>(&mut self, f: impl FnOnce(&mut Trace) -> T) -> T {
        self.depth += 1;
        let out = f(self);
        self.depth -= 1;
        out
    }

    pub(crate) fn into_lines(self) -> Vec<String> {
        self.lines
    }
}

/// Formats a local vertex set in input labels.
pub(crate) fn named(set: &VertexSet, names: &[usize]) -> VertexSet {
    set.mapped(names)
}

/// Induced subgraph on `keep` (sorted), with the label maps needed to lift
/// sets back: `map` goes to the parent graph, `names` to the input graph.
pub(crate) struct Sub {
    pub g: Graph,
    pub map: Vec<usize>,
    pub names: Vec<usize>,
}

impl Sub {
    pub(crate) fn induced(g: &Graph, names: &[usize], keep: &[usize]) -> Sub {
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        let (sub, map) = g.induced(&keep);
        let names = map.iter().map(|&v| names[v]).collect();
        Sub { g: sub, map, names }
    }

    pub(crate) fn without(g: &Graph, names: &[usize], drop: &[usize]) -> Sub {
        let (sub, map) = g.without(drop);
        let names = map.iter().map(|&v| names[v]).collect();
        Sub { g: sub, map, names }
    }

    /// Lifts a set of this subgraph to the parent graph.
    pub(crate) fn lift(&self, set: &VertexSet) -> VertexSet {
        set.mapped(&self.map)
    }
}

/// Turns a near-miss into an LTD-set: each undominated vertex gets its
/// smallest neighbor added, each unlocated pair loses one member to the
/// set, and the result is pruned to an inclusion-minimal LTD-set.
pub(crate) fn repair(g: &Graph, set: &VertexSet) -> VertexSet {
    let mut d = set.clone();
    while let Some(v) = ltd_violation(g, &d) {
        match v {
            Violation::Undominated { vertex } => d.insert(g.neighbors(vertex)[0]),
            Violation::Unlocated { u, .. } => d.insert(u),
        };
    }
    prune_ltd(g, &d)
}

pub(crate) fn identity(n: usize) -> Vec<usize> {
    (0..n).collect()
}
