//! Structural primitives: components, bridges, blocks and twins.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::graph::{Graph, VertexSet};

/// Connected components ordered by smallest member.
pub fn connected_components(g: &Graph) -> Vec<VertexSet> {
    let n = g.order();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut stack = vec![s];
        let mut comp = Vec::new();
        while let Some(v) = stack.pop() {
            comp.push(v);
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        out.push(comp.into_iter().collect());
    }
    out
}

pub fn is_connected(g: &Graph) -> bool {
    connected_components(g).len() <= 1
}

/// Low-link DFS shared by `bridges` and `block_cut_tree`.
struct Dfs<'a> {
    g: &'a Graph,
    disc: Vec<usize>,
    low: Vec<usize>,
    time: usize,
    edge_stack: Vec<(usize, usize)>,
    blocks: Vec<VertexSet>,
    bridges: Vec<(usize, usize)>,
    cut: Vec<bool>,
}

impl<'a> Dfs<'a> {
    fn run(g: &'a Graph) -> Self {
        let n = g.order();
        let mut dfs = Dfs {
            g,
            disc: vec![usize::MAX; n],
            low: vec![0; n],
            time: 0,
            edge_stack: Vec::new(),
            blocks: Vec::new(),
            bridges: Vec::new(),
            cut: vec![false; n],
        };
        for r in 0..n {
            if dfs.disc[r] == usize::MAX {
                dfs.visit(r);
            }
        }
        dfs
    }

    // Iterative Hopcroft-Tarjan so deep paths do not blow the call stack.
    fn visit(&mut self, root: usize) {
        let g = self.g;
        self.disc[root] = self.time;
        self.low[root] = self.time;
        self.time += 1;
        let mut root_children = 0;
        // (vertex, parent, next neighbor index)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(&mut (v, parent, ref mut idx)) = stack.last_mut() {
            if *idx < g.neighbors(v).len() {
                let w = g.neighbors(v)[*idx];
                *idx += 1;
                if w == parent {
                    continue;
                }
                if self.disc[w] == usize::MAX {
                    self.edge_stack.push((v, w));
                    self.disc[w] = self.time;
                    self.low[w] = self.time;
                    self.time += 1;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((w, v, 0));
                } else if self.disc[w] < self.disc[v] {
                    self.edge_stack.push((v, w));
                    self.low[v] = self.low[v].min(self.disc[w]);
                }
            } else {
                stack.pop();
                if parent == usize::MAX {
                    continue;
                }
                self.low[parent] = self.low[parent].min(self.low[v]);
                if self.low[v] > self.disc[parent] {
                    self.bridges.push((parent.min(v), parent.max(v)));
                }
                if self.low[v] >= self.disc[parent] {
                    if parent != root {
                        self.cut[parent] = true;
                    }
                    let mut members = Vec::new();
                    while let Some((a, b)) = self.edge_stack.pop() {
                        members.push(a);
                        members.push(b);
                        if (a, b) == (parent, v) {
                            break;
                        }
                    }
                    self.blocks.push(members.into_iter().collect());
                }
            }
        }
        if root_children > 1 {
            self.cut[root] = true;
        }
    }
}

/// Bridges as `(u, v)` with `u < v`, sorted.
pub fn bridges(g: &Graph) -> Vec<(usize, usize)> {
    let mut b = Dfs::run(g).bridges;
    b.sort_unstable();
    b
}

/// Blocks, cut vertices and their incidence forest.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockCutTree {
    /// Maximal 2-connected vertex sets (bridges appear as 2-element blocks),
    /// sorted lexicographically.
    pub blocks: Vec<VertexSet>,
    pub cut_vertices: VertexSet,
    /// `(block index, cut vertex)` incidences, sorted.
    pub tree_edges: Vec<(usize, usize)>,
}

impl BlockCutTree {
    /// Indices of the blocks containing `v`.
    pub fn blocks_of(&self, v: usize) -> Vec<usize> {
        self.blocks
            .iter()
            .enumerate()
            .filter(|(_, b)| b.contains(v))
            .map(|(i, _)| i)
            .collect()
    }
}

pub fn block_cut_tree(g: &Graph) -> BlockCutTree {
    let dfs = Dfs::run(g);
    let mut blocks = dfs.blocks;
    blocks.sort();
    let cut_vertices: VertexSet = (0..g.order()).filter(|&v| dfs.cut[v]).collect();
    let mut tree_edges = Vec::new();
    for (i, b) in blocks.iter().enumerate() {
        for v in b.iter().filter(|&v| cut_vertices.contains(v)) {
            tree_edges.push((i, v));
        }
    }
    BlockCutTree {
        blocks,
        cut_vertices,
        tree_edges,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TwinKind {
    Open,
    Closed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwinClass {
    pub kind: TwinKind,
    pub vertices: VertexSet,
}

/// All maximal twin classes of size at least two, ordered by smallest member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwinReport {
    pub classes: Vec<TwinClass>,
}

impl TwinReport {
    pub fn is_twin_free(&self) -> bool {
        self.classes.is_empty()
    }

    /// Some twin pair, smallest first.
    pub fn first_pair(&self) -> Option<(usize, usize)> {
        self.classes.first().map(|c| {
            let s = c.vertices.as_slice();
            (s[0], s[1])
        })
    }

    /// All unordered twin pairs, in class order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for c in &self.classes {
            let s = c.vertices.as_slice();
            for i in 0..s.len() {
                for j in i + 1..s.len() {
                    out.push((s[i], s[j]));
                }
            }
        }
        out
    }

    /// Members of the class containing `v`, if any.
    pub fn class_of(&self, v: usize) -> Option<&TwinClass> {
        self.classes.iter().find(|c| c.vertices.contains(v))
    }
}

pub fn twin_report(g: &Graph) -> TwinReport {
    let mut open: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    let mut closed: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for v in g.vertices() {
        open.entry(g.neighbors(v).to_vec()).or_default().push(v);
        let mut nb = g.neighbors(v).to_vec();
        let pos = nb.binary_search(&v).unwrap_err();
        nb.insert(pos, v);
        closed.entry(nb).or_default().push(v);
    }
    let mut classes: Vec<TwinClass> = open
        .into_values()
        .filter(|c| c.len() > 1)
        .map(|c| TwinClass {
            kind: TwinKind::Open,
            vertices: c.into_iter().collect(),
        })
        .chain(closed.into_values().filter(|c| c.len() > 1).map(|c| TwinClass {
            kind: TwinKind::Closed,
            vertices: c.into_iter().collect(),
        }))
        .collect();
    classes.sort_by_key(|c| (c.vertices.first(), c.kind));
    TwinReport { classes }
}

pub fn is_twin_free(g: &Graph) -> bool {
    twin_report(g).is_twin_free()
}
