//! Simple undirected graphs over dense vertex ids `0..n`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::LtdError;

/// Graphs up to this order also carry a `u128` adjacency row per vertex.
pub const BITSET_LIMIT: usize = 128;

/// A simple undirected graph with sorted adjacency lists.
///
/// Vertices are `0..n`. Adjacency is symmetric, loop-free and sorted; for
/// `n <= 128` a bitset row per vertex is kept alongside for O(1) adjacency
/// tests and fast set operations in the exhaustive solvers.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    rows: Option<Vec<u128>>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        let mut g = Graph {
            adj: vec![Vec::new(); n],
            rows: None,
        };
        g.refresh_rows();
        g
    }

    /// Builds a graph from an edge list, rejecting loops and out-of-range
    /// endpoints. Duplicate edges are merged.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, LtdError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            check_vertex(n, u)?;
            check_vertex(n, v)?;
            if u == v {
                return Err(LtdError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        let mut g = Graph { adj, rows: None };
        g.refresh_rows();
        Ok(g)
    }

    fn refresh_rows(&mut self) {
        self.rows = (self.adj.len() <= BITSET_LIMIT).then(|| {
            self.adj
                .iter()
                .map(|list| list.iter().fold(0u128, |acc, &w| acc | (1u128 << w)))
                .collect()
        });
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn size(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// Degree of `v`, or a usage error when `v` is out of range.
    pub fn degree(&self, v: usize) -> Result<usize, LtdError> {
        check_vertex(self.order(), v)?;
        Ok(self.adj[v].len())
    }

    /// Unchecked degree for internal loops.
    pub fn deg(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        match &self.rows {
            Some(rows) => rows[u] >> v & 1 == 1,
            None => self.adj[u].binary_search(&v).is_ok(),
        }
    }

    /// Bitset adjacency row, available when `n <= 128`.
    pub fn row(&self, v: usize) -> Option<u128> {
        self.rows.as_ref().map(|rows| rows[v])
    }

    pub fn rows(&self) -> Option<&[u128]> {
        self.rows.as_deref()
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    /// All edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.size());
        for (u, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    /// True iff no vertex is isolated (vacuously true for `n = 0`).
    pub fn is_isolate_free(&self) -> bool {
        self.adj.iter().all(|list| !list.is_empty())
    }

    /// Subgraph induced by `keep`, relabelled to `0..keep.len()` in the
    /// order given. Returns the graph and the new-to-old label map.
    pub fn induced(&self, keep: &[usize]) -> (Graph, Vec<usize>) {
        let mut index = vec![usize::MAX; self.order()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let mut adj = vec![Vec::new(); keep.len()];
        for (i, &v) in keep.iter().enumerate() {
            adj[i] = self.adj[v]
                .iter()
                .filter_map(|&w| (index[w] != usize::MAX).then_some(index[w]))
                .collect();
            adj[i].sort_unstable();
        }
        let mut g = Graph { adj, rows: None };
        g.refresh_rows();
        (g, keep.to_vec())
    }

    /// Induced subgraph on all vertices except `drop`, keeping the remaining
    /// vertices in increasing order.
    pub fn without(&self, drop: &[usize]) -> (Graph, Vec<usize>) {
        let mut gone = vec![false; self.order()];
        for &v in drop {
            gone[v] = true;
        }
        let keep: Vec<usize> = self.vertices().filter(|&v| !gone[v]).collect();
        self.induced(&keep)
    }

    /// Copy of the graph with the listed edges removed.
    pub fn without_edges(&self, edges: &[(usize, usize)]) -> Graph {
        let mut adj = self.adj.clone();
        for &(u, v) in edges {
            adj[u].retain(|&w| w != v);
            adj[v].retain(|&w| w != u);
        }
        let mut g = Graph { adj, rows: None };
        g.refresh_rows();
        g
    }

    /// Complement graph.
    pub fn complement(&self) -> Graph {
        let n = self.order();
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if !self.has_edge(u, v) {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(n, &edges).expect("complement edges are in range")
    }

    /// Disjoint union; vertices of `other` are shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.order();
        let mut edges = self.edges();
        edges.extend(other.edges().into_iter().map(|(u, v)| (u + shift, v + shift)));
        Graph::from_edges(shift + other.order(), &edges).expect("shifted edges are in range")
    }

    /// Degree sequence in vertex order.
    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.order(), self.edges())
    }
}

pub(crate) fn check_vertex(n: usize, v: usize) -> Result<(), LtdError> {
    if v < n {
        Ok(())
    } else {
        Err(LtdError::VertexOutOfRange { vertex: v, order: n })
    }
}

/// A set of vertex ids, stored sorted and deduplicated.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn insert(&mut self, v: usize) -> bool {
        match self.0.binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.0.insert(pos, v);
                true
            }
        }
    }

    pub fn remove(&mut self, v: usize) -> bool {
        match self.0.binary_search(&v) {
            Ok(pos) => {
                self.0.remove(pos);
                true
            }
            Err(_) => false,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn first(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.iter().chain(other.iter()).collect()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    /// Relabels members through `map` (new-to-old maps from `Graph::induced`).
    pub fn mapped(&self, map: &[usize]) -> VertexSet {
        self.iter().map(|v| map[v]).collect()
    }

    /// Checks every member against the order of the graph it is used with.
    pub fn check_in(&self, n: usize) -> Result<(), LtdError> {
        self.iter().try_for_each(|v| check_vertex(n, v))
    }

    pub(crate) fn to_bits(&self) -> u128 {
        self.iter().fold(0u128, |acc, v| acc | (1u128 << v))
    }

    pub(crate) fn from_bits(bits: u128) -> VertexSet {
        VertexSet(BitIter(bits).collect())
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut v: Vec<usize> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(v: Vec<usize>) -> Self {
        v.into_iter().collect()
    }
}

impl<const N: usize> From<[usize; N]> for VertexSet {
    fn from(v: [usize; N]) -> Self {
        v.into_iter().collect()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Iterates the set bits of a `u128` from lowest to highest.
#[derive(Clone, Copy)]
pub(crate) struct BitIter(pub u128);

impl Iterator for BitIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }
}
