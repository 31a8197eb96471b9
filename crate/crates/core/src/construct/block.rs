use serde::Serialize;

use crate::error::{LtdError, Result};
use crate::graph::{Graph, VertexSet};
use crate::recognize::recognize_block_graph;
use crate::structure::{block_cut_tree, is_connected, is_twin_free, twin_report};

use super::{certify, identity, named, Certificate, Sub, Theorem, Trace};

/// One reduction step of the block-graph induction, in the labels of the
/// graph it was computed on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockReduction {
    /// Cut vertex at the root of the block-cut tree.
    pub root: usize,
    /// The deepest leaf block chosen.
    pub deepest_leaf: VertexSet,
    /// Cut vertex at the great-grandparent of that leaf.
    pub p: usize,
    /// Child and great-grandchild blocks of `p`.
    pub blocks: Vec<VertexSet>,
    /// Union of `blocks`.
    pub u: VertexSet,
    /// Cut vertices of the whole graph lying in `u`.
    pub a: VertexSet,
}

/// LTD-set of size at most `floor(2n/3)` for `P_3` or a connected twin-free
/// block graph of order at least 4.
pub fn construct_block(g: &Graph) -> Result<Certificate> {
    if !is_connected(g) {
        return Err(LtdError::Disconnected);
    }
    if !recognize_block_graph(g) {
        return Err(LtdError::NotInClass("a block graph"));
    }
    if !is_p3(g) {
        if let Some((a, b)) = twin_report(g).first_pair() {
            return Err(LtdError::HasTwins(a, b));
        }
        if g.order() < 4 {
            return Err(LtdError::Hypothesis("block graph must be P3 or have order >= 4".into()));
        }
    }
    let mut trace = Trace::new();
    let set = reduce(g, &identity(g.order()), &mut trace)?;
    certify(g, set, Theorem::Block, 2 * g.order() / 3, trace.into_lines())
}

fn is_p3(g: &Graph) -> bool {
    g.order() == 3 && g.size() == 2
}

/// First reduction step on a connected twin-free block graph of order at
/// least 4: root the block-cut tree at the smallest cut vertex, take the
/// first deepest leaf in preorder (child blocks ordered by their vertex
/// lists, child cut vertices by id) and its great-grandparent `p`.
pub fn block_reduction(g: &Graph) -> Result<BlockReduction> {
    let bct = block_cut_tree(g);
    let root = bct
        .cut_vertices
        .first()
        .ok_or_else(|| LtdError::Hypothesis("block graph has no cut vertex".into()))?;
    let nb = bct.blocks.len();
    // Tree nodes: blocks are 0..nb, cut vertex c is nb + c.
    let mut tree: Vec<Vec<usize>> = vec![Vec::new(); nb + g.order()];
    for &(b, c) in &bct.tree_edges {
        tree[b].push(nb + c);
        tree[nb + c].push(b);
    }
    for list in tree.iter_mut() {
        list.sort_unstable();
    }
    let start = nb + root;
    let mut parent = vec![usize::MAX; tree.len()];
    let mut depth = vec![0usize; tree.len()];
    let mut best: Option<usize> = None;
    let mut stack = vec![start];
    parent[start] = start;
    while let Some(x) = stack.pop() {
        let children: Vec<usize> = tree[x].iter().copied().filter(|&y| y != parent[x]).collect();
        if children.is_empty() && best.is_none_or(|b| depth[x] > depth[b]) {
            best = Some(x);
        }
        for &y in children.iter().rev() {
            parent[y] = x;
            depth[y] = depth[x] + 1;
            stack.push(y);
        }
    }
    let leaf = best.expect("tree is non-empty");
    if depth[leaf] < 3 {
        return Err(LtdError::Invariant("deepest leaf block has no great-grandparent".into()));
    }
    let pnode = parent[parent[parent[leaf]]];
    let p = pnode - nb;
    let mut blocks = Vec::new();
    for &child in tree[pnode].iter().filter(|&&y| y != parent[pnode]) {
        blocks.push(child);
        for &grand in tree[child].iter().filter(|&&y| y != pnode) {
            blocks.extend(tree[grand].iter().copied().filter(|&y| y != child));
        }
    }
    blocks.sort_unstable();
    let blocks: Vec<VertexSet> = blocks.into_iter().map(|b| bct.blocks[b].clone()).collect();
    let u = blocks.iter().fold(VertexSet::new(), |acc, b| acc.union(b));
    let a = u.iter().filter(|&v| bct.cut_vertices.contains(v)).collect();
    Ok(BlockReduction {
        root,
        deepest_leaf: bct.blocks[leaf].clone(),
        p,
        blocks,
        u,
        a,
    })
}

/// Recursive construction; `names` maps local vertices to input labels.
fn reduce(g: &Graph, names: &[usize], trace: &mut Trace) -> Result<VertexSet> {
    if is_p3(g) {
        let centre = g.vertices().find(|&v| g.deg(v) == 2).expect("P3 has a centre");
        let leaf = g.vertices().find(|&v| g.deg(v) == 1).expect("P3 has a leaf");
        let set = VertexSet::from([centre, leaf]);
        trace.push(format!("P3: take {}", named(&set, names)));
        return Ok(set);
    }
    let step = block_reduction(g)?;
    let a = step.a.clone();
    trace.push(format!(
        "p={}, U={}, A={}",
        names[step.p],
        named(&step.u, names),
        named(&a, names)
    ));
    let rest = Sub::without(g, names, step.u.as_slice());
    let n1 = rest.g.order();
    if n1 == 0 {
        trace.push("G' is empty: take A".into());
        return Ok(a);
    }
    if n1 == 1 {
        return Err(LtdError::Invariant("G' is a single vertex".into()));
    }
    if !is_connected(&rest.g) {
        return Err(LtdError::Invariant("G' is disconnected".into()));
    }
    if n1 >= 3 && (is_p3(&rest.g) || is_twin_free(&rest.g)) {
        trace.push("G' is twin-free or P3: recurse".into());
        let inner = trace.nested(|t| reduce(&rest.g, &rest.names, t))?;
        return Ok(rest.lift(&inner).union(&a));
    }

    // x ~ p and y not, for a twin pair of G'.
    let (x, y) = twin_report(&rest.g)
        .pairs()
        .into_iter()
        .map(|(s, t)| (rest.map[s], rest.map[t]))
        .find_map(|(s, t)| match (g.has_edge(s, step.p), g.has_edge(t, step.p)) {
            (true, false) => Some((s, t)),
            (false, true) => Some((t, s)),
            _ => None,
        })
        .ok_or_else(|| LtdError::Invariant("no twin pair of G' separated by p".into()))?;
    let mut with_x = a.clone();
    with_x.insert(x);
    let rest2 = Sub::without(g, names, &[step.u.as_slice(), &[x]].concat());
    trace.push(format!("G' has twins x={}, y={}: G'' = G' - x", names[x], names[y]));
    match rest2.g.order() {
        1 => {
            trace.push("G'' is a single vertex: take A + x".into());
            return Ok(with_x);
        }
        0 | 2 => return Err(LtdError::Invariant(format!("G'' has order {}", rest2.g.order()))),
        _ => {}
    }
    if !is_connected(&rest2.g) {
        return Err(LtdError::Invariant("G'' is disconnected".into()));
    }
    if is_p3(&rest2.g) || is_twin_free(&rest2.g) {
        trace.push("G'' is twin-free or P3: recurse".into());
        let inner = trace.nested(|t| reduce(&rest2.g, &rest2.names, t))?;
        return Ok(rest2.lift(&inner).union(&a));
    }
    let y_local = rest2.map.iter().position(|&v| v == y).expect("y survives in G''");
    if !twin_report(&rest2.g).pairs().iter().all(|&(s, t)| s == y_local || t == y_local) {
        return Err(LtdError::Invariant("G'' has twins not involving y".into()));
    }
    let rest3 = Sub::without(g, names, &[step.u.as_slice(), &[x, y]].concat());
    if rest3.g.order() < 3 || !is_connected(&rest3.g) || !is_twin_free(&rest3.g) {
        return Err(LtdError::Invariant("G* is not a connected twin-free graph of order >= 3".into()));
    }
    trace.push("G'' has twins at y: recurse on G* = G'' - y and add x".into());
    let inner = trace.nested(|t| reduce(&rest3.g, &rest3.names, t))?;
    Ok(rest3.lift(&inner).union(&with_x))
}
