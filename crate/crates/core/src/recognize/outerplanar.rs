//! Outerplanarity with forbidden-minor witnesses, boundary cycles of
//! outerplanar blocks, and leg decompositions.

use serde::Serialize;

use super::ClassWitness;
use crate::error::{LtdError, Result};
use crate::graph::{Graph, VertexSet};
use crate::structure::{block_cut_tree, bridges, is_connected};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MinorTarget {
    K4,
    K23,
}

/// Branch sets of a `K_4` or `K_{2,3}` minor. For `K_{2,3}` the first two
/// sets form the side of size two.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinorModel {
    pub target: MinorTarget,
    pub branch_sets: Vec<VertexSet>,
}

impl MinorModel {
    /// Checks disjointness, connectivity of each branch set and the
    /// required adjacencies between them.
    pub fn verify(&self, g: &Graph) -> bool {
        let sets = &self.branch_sets;
        let expected = match self.target {
            MinorTarget::K4 => 4,
            MinorTarget::K23 => 5,
        };
        if sets.len() != expected || sets.iter().any(|s| s.is_empty() || s.check_in(g.order()).is_err()) {
            return false;
        }
        for i in 0..sets.len() {
            for j in i + 1..sets.len() {
                if sets[i].iter().any(|v| sets[j].contains(v)) {
                    return false;
                }
            }
        }
        if !sets.iter().all(|s| is_connected(&g.induced(s.as_slice()).0)) {
            return false;
        }
        let touch = |a: &VertexSet, b: &VertexSet| a.iter().any(|u| b.iter().any(|v| g.has_edge(u, v)));
        match self.target {
            MinorTarget::K4 => (0..4).all(|i| (i + 1..4).all(|j| touch(&sets[i], &sets[j]))),
            MinorTarget::K23 => (0..2).all(|i| (2..5).all(|j| touch(&sets[i], &sets[j]))),
        }
    }
}

/// Edge `uv` of a 2-connected block is a chord iff removing both
/// endpoints disconnects the block.
fn is_chord(block: &Graph, u: usize, v: usize) -> bool {
    let (rest, _) = block.without(&[u, v]);
    !is_connected(&rest)
}

/// For a 2-connected graph, the boundary cycle (starting at vertex 0)
/// when the graph is outerplanar.
fn outer_cycle(block: &Graph) -> Option<Vec<usize>> {
    let n = block.order();
    if n < 3 {
        return None;
    }
    if block.size() > 2 * n - 3 {
        return None;
    }
    let mut cyc_adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut chords = Vec::new();
    for (u, v) in block.edges() {
        if n > 3 && is_chord(block, u, v) {
            chords.push((u, v));
        } else {
            cyc_adj[u].push(v);
            cyc_adj[v].push(u);
        }
    }
    if cyc_adj.iter().any(|a| a.len() != 2) {
        return None;
    }
    let mut order = vec![0usize];
    let mut prev = 0;
    let mut cur = cyc_adj[0][0].min(cyc_adj[0][1]);
    while cur != 0 {
        order.push(cur);
        let next = if cyc_adj[cur][0] == prev { cyc_adj[cur][1] } else { cyc_adj[cur][0] };
        prev = cur;
        cur = next;
        if order.len() > n {
            return None;
        }
    }
    if order.len() != n {
        return None;
    }
    let mut pos = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let spans: Vec<(usize, usize)> = chords
        .iter()
        .map(|&(u, v)| (pos[u].min(pos[v]), pos[u].max(pos[v])))
        .collect();
    for (i, &(a, b)) in spans.iter().enumerate() {
        for &(c, d) in &spans[i + 1..] {
            if (a < c && c < b && b < d) || (c < a && a < d && d < b) {
                return None;
            }
        }
    }
    Some(order)
}

/// Exact outerplanarity test: every block must be a cycle whose remaining
/// edges are pairwise non-crossing chords.
pub fn is_outerplanar(g: &Graph) -> bool {
    failing_block(g).is_none()
}

/// Some block that is not outerplanar. Dense blocks (more than
/// `2n - 3` edges) are rejected before any chord classification.
fn failing_block(g: &Graph) -> Option<VertexSet> {
    block_cut_tree(g)
        .blocks
        .into_iter()
        .find(|b| b.len() >= 3 && outer_cycle(&g.induced(b.as_slice()).0).is_none())
}

/// Outerplanarity with a certificate: `Outerplanar`, or `None` carrying a
/// `K_4` or `K_{2,3}` minor model.
pub fn recognize_outerplanar(g: &Graph) -> ClassWitness {
    let Some(block) = failing_block(g) else {
        return ClassWitness::Outerplanar;
    };
    let model = extract_minor(g, &block);
    debug_assert!(model.verify(g));
    let reason = match model.target {
        MinorTarget::K4 => "contains a K4 minor",
        MinorTarget::K23 => "contains a K2,3 minor",
    };
    ClassWitness::None {
        reason: reason.to_string(),
        minor: Some(model),
    }
}

/// Shrinks a non-outerplanar block by edge deletions and contractions
/// until it is minor-minimal, which leaves exactly `K_4` or `K_{2,3}`.
fn extract_minor(g: &Graph, block: &VertexSet) -> MinorModel {
    let mut branch: Vec<Vec<usize>> = (0..block.len()).map(|i| vec![i]).collect();
    let (sub, _) = g.induced(block.as_slice());
    let mut edges = sub.edges();
    let mut alive = vec![true; branch.len()];
    let current = |edges: &[(usize, usize)], alive: &[bool]| -> Graph {
        let keep: Vec<usize> = (0..alive.len()).filter(|&v| alive[v]).collect();
        let full = Graph::from_edges(alive.len(), edges).expect("edges stay in range");
        full.induced(&keep).0
    };
    loop {
        let mut changed = false;
        let mut i = 0;
        while i < edges.len() {
            let mut trial = edges.clone();
            trial.remove(i);
            if !is_outerplanar(&current(&trial, &alive)) {
                edges = trial;
                changed = true;
            } else {
                i += 1;
            }
        }
        for (v, live) in alive.iter_mut().enumerate() {
            if *live && !edges.iter().any(|&(a, b)| a == v || b == v) {
                *live = false;
            }
        }
        let mut i = 0;
        while i < edges.len() {
            let (keep, gone) = edges[i];
            let mut trial: Vec<(usize, usize)> = edges
                .iter()
                .filter(|&&e| e != edges[i])
                .map(|&(a, b)| {
                    let a = if a == gone { keep } else { a };
                    let b = if b == gone { keep } else { b };
                    (a.min(b), a.max(b))
                })
                .filter(|&(a, b)| a != b)
                .collect();
            trial.sort_unstable();
            trial.dedup();
            let mut trial_alive = alive.clone();
            trial_alive[gone] = false;
            if !is_outerplanar(&current(&trial, &trial_alive)) {
                let moved = std::mem::take(&mut branch[gone]);
                branch[keep].extend(moved);
                edges = trial;
                alive = trial_alive;
                changed = true;
            } else {
                i += 1;
            }
        }
        if !changed {
            break;
        }
    }
    let nodes: Vec<usize> = (0..alive.len()).filter(|&v| alive[v]).collect();
    let map = block.as_slice();
    let set_of = |v: usize| -> VertexSet { branch[v].iter().map(|&i| map[i]).collect() };
    let deg = |v: usize| edges.iter().filter(|&&(a, b)| a == v || b == v).count();
    if nodes.len() == 4 {
        MinorModel {
            target: MinorTarget::K4,
            branch_sets: nodes.iter().map(|&v| set_of(v)).collect(),
        }
    } else {
        assert_eq!(nodes.len(), 5, "minor-minimal non-outerplanar graph is K4 or K2,3");
        let mut ordered = nodes.clone();
        ordered.sort_by_key(|&v| std::cmp::Reverse(deg(v)));
        MinorModel {
            target: MinorTarget::K23,
            branch_sets: ordered.iter().map(|&v| set_of(v)).collect(),
        }
    }
}

/// Cyclic vertex order of a Hamiltonian cycle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HamCycle {
    pub order: Vec<usize>,
}

/// The unique Hamiltonian cycle of a 2-connected outerplanar graph,
/// starting at the smallest vertex and continuing to its smaller cycle
/// neighbor.
pub fn ham_cycle_outerplanar(g: &Graph) -> Result<HamCycle> {
    ham_cycle_from(g, 0)
}

/// As `ham_cycle_outerplanar`, starting at `start`.
pub fn ham_cycle_from(g: &Graph, start: usize) -> Result<HamCycle> {
    crate::graph::check_vertex(g.order(), start)?;
    let n = g.order();
    let bct = block_cut_tree(g);
    if n < 3 || bct.blocks.len() != 1 || bct.blocks[0].len() != n {
        return Err(LtdError::InvalidParameter(
            "boundary cycle needs a 2-connected graph of order >= 3".into(),
        ));
    }
    let order = outer_cycle(g)
        .ok_or_else(|| LtdError::InvalidParameter("graph is not outerplanar".into()))?;
    let at = order.iter().position(|&v| v == start).expect("cycle covers every vertex");
    let mut rotated: Vec<usize> = order[at..].iter().chain(&order[..at]).copied().collect();
    if rotated[n - 1] < rotated[1] {
        rotated[1..].reverse();
    }
    Ok(HamCycle { order: rotated })
}

/// Pendant paths hanging from vertices of degree at least three, and the
/// bridgeless core left after removing them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LegDecomposition {
    /// Each leg as `l_0 (anchor), l_1, ..., l_k (leaf)`, ordered by leaf.
    pub legs: Vec<Vec<usize>>,
    pub core: VertexSet,
    /// True iff every leg has length at most three.
    pub short_legs: bool,
}

impl LegDecomposition {
    /// Legs anchored at `v`.
    pub fn legs_at(&self, v: usize) -> impl Iterator<Item = &Vec<usize>> {
        self.legs.iter().filter(move |l| l[0] == v)
    }
}

/// Legs and core of a connected graph that is not a tree. Fails when some
/// bridge does not lie on a leg.
pub fn leg_decomposition(g: &Graph) -> Result<LegDecomposition> {
    if !is_connected(g) || g.order() == 0 {
        return Err(LtdError::Disconnected);
    }
    if g.size() + 1 == g.order() {
        return Err(LtdError::Hypothesis("graph is a tree".into()));
    }
    let mut legs = Vec::new();
    let mut on_leg = vec![false; g.order()];
    for leaf in g.vertices().filter(|&v| g.deg(v) == 1) {
        let mut walk = vec![leaf];
        let mut prev = leaf;
        let mut cur = g.neighbors(leaf)[0];
        while g.deg(cur) == 2 {
            walk.push(cur);
            let next = if g.neighbors(cur)[0] == prev { g.neighbors(cur)[1] } else { g.neighbors(cur)[0] };
            prev = cur;
            cur = next;
        }
        walk.push(cur);
        walk.reverse();
        for &v in &walk[1..] {
            on_leg[v] = true;
        }
        legs.push(walk);
    }
    let leg_edges = legs.iter().map(|l| l.len() - 1).sum::<usize>();
    if leg_edges != bridges(g).len() {
        return Err(LtdError::Hypothesis(
            "a bridge separates two parts that are not pendant paths".into(),
        ));
    }
    let core: VertexSet = g.vertices().filter(|&v| !on_leg[v]).collect();
    let short_legs = legs.iter().all(|l| l.len() <= 4);
    Ok(LegDecomposition { legs, core, short_legs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn recognition_examples() {
        assert_eq!(recognize_outerplanar(&families::cycle(7)), ClassWitness::Outerplanar);
        let k4 = families::complete(4);
        match recognize_outerplanar(&k4) {
            ClassWitness::None { minor: Some(m), .. } => {
                assert_eq!(m.target, MinorTarget::K4);
                assert!(m.branch_sets.iter().all(|s| s.len() == 1));
                assert!(m.verify(&k4));
            }
            other => panic!("unexpected {other:?}"),
        }
        let k23 = families::complete_bipartite(2, 3);
        match recognize_outerplanar(&k23) {
            ClassWitness::None { minor: Some(m), .. } => {
                assert_eq!(m.target, MinorTarget::K23);
                assert!(m.verify(&k23));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn minor_model_in_labels_of_the_whole_graph() {
        let g = Graph::empty(1).disjoint_union(&families::complete(4));
        match recognize_outerplanar(&g) {
            ClassWitness::None { minor: Some(m), .. } => {
                assert!(m.verify(&g));
                assert!(m.branch_sets.iter().all(|s| !s.contains(0)));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn boundary_cycles() {
        assert_eq!(ham_cycle_outerplanar(&families::cycle(5)).unwrap().order, vec![0, 1, 2, 3, 4]);
        let c4_chord = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        assert_eq!(ham_cycle_outerplanar(&c4_chord).unwrap().order, vec![0, 1, 2, 3]);
        // fan: hub 0 joined to the path 1-2-3-4
        let fan = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(ham_cycle_outerplanar(&fan).unwrap().order, vec![0, 1, 2, 3, 4]);
        assert!(ham_cycle_outerplanar(&families::path(4)).is_err());
        assert!(ham_cycle_outerplanar(&families::complete(4)).is_err());
    }

    #[test]
    fn leg_examples() {
        let mut edges = families::cycle(5).edges();
        edges.extend([(0, 5), (5, 6)]);
        let g = Graph::from_edges(7, &edges).unwrap();
        let ld = leg_decomposition(&g).unwrap();
        assert_eq!(ld.legs, vec![vec![0, 5, 6]]);
        assert_eq!(ld.core, VertexSet::from([0, 1, 2, 3, 4]));

        let corona = families::two_corona(&families::cycle(6)).unwrap();
        let ld = leg_decomposition(&corona).unwrap();
        assert_eq!(ld.legs.len(), 6);
        assert!(ld.legs.iter().all(|l| l.len() == 3));
        assert_eq!(ld.core, (0..6).collect());

        let ld = leg_decomposition(&families::cycle(5)).unwrap();
        assert!(ld.legs.is_empty());
        assert!(leg_decomposition(&families::path(5)).is_err());
    }
}
