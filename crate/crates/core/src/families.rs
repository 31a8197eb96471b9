//! Named graph families, seeded random class instances and small-graph
//! enumeration.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{LtdError, Result};
use crate::graph::Graph;
use crate::ltd::exact_min_ltd;
use crate::recognize::GraphClass;
use crate::structure::{connected_components, is_connected, is_twin_free, twin_report};

/// Attempts made by `random_instance` before giving up.
pub const RETRY_CAP: usize = 1000;

/// Largest order accepted by `enumerate_connected`.
pub const ENUMERATION_LIMIT: usize = 8;

fn build(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::from_edges(n, edges).expect("generated edges are in range")
}

/// Path `0 - 1 - ... - (n-1)`.
pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    build(n, &edges)
}

/// Cycle `0 - 1 - ... - (n-1) - 0`; for `n < 3` this is a path.
pub fn cycle(n: usize) -> Graph {
    let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    if n >= 3 {
        edges.push((0, n - 1));
    }
    build(n, &edges)
}

pub fn complete(n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    build(n, &edges)
}

/// The star `K_{1,k}` with center 0.
pub fn star(k: usize) -> Graph {
    let edges: Vec<_> = (1..=k).map(|i| (0, i)).collect();
    build(k + 1, &edges)
}

/// `K_{a,b}` with parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..a {
        for v in a..a + b {
            edges.push((u, v));
        }
    }
    build(a + b, &edges)
}

/// The 2-corona `H ∘ P_2`: vertex `i` of `h` keeps its id and gets the
/// path `i - (k+i) - (2k+i)` where `k = |V(h)|`.
pub fn two_corona(h: &Graph) -> Result<Graph> {
    let k = h.order();
    if k == 0 || !is_connected(h) {
        return Err(LtdError::InvalidParameter(
            "2-corona needs a connected base graph with at least one vertex".into(),
        ));
    }
    let mut edges = h.edges();
    for i in 0..k {
        edges.push((i, k + i));
        edges.push((k + i, 2 * k + i));
    }
    Ok(build(3 * k, &edges))
}

/// The split graph `G_k` with `γ_t^L = 2k - 1`: clique `q_1..q_k`
/// (ids `0..k`), `q'_1..q'_k` (ids `k..2k`), stable `s_1..s_k`
/// (ids `2k..3k`), `N(s_i) = {q_i, q'_i}` for `i < k` and
/// `N(s_k) = {q_1, ..., q_k}`.
pub fn split_tight(k: usize) -> Result<Graph> {
    if k < 3 {
        return Err(LtdError::InvalidParameter("split-tight needs k >= 3".into()));
    }
    let mut edges = Vec::new();
    for u in 0..2 * k {
        for v in u + 1..2 * k {
            edges.push((u, v));
        }
    }
    for i in 0..k - 1 {
        edges.push((2 * k + i, i));
        edges.push((2 * k + i, k + i));
    }
    for i in 0..k {
        edges.push((3 * k - 1, i));
    }
    Ok(build(3 * k, &edges))
}

/// Two `k`-cliques `a_0..a_{k-1}` (ids `0..k`) and `b_0..b_{k-1}` (ids
/// `k..2k`) with `a_i ~ b_j` iff `i > j`.
///
/// For `k <= 4` the generator checks that the exact LTD number is `k`
/// and fails otherwise.
pub fn half_graph_complement(k: usize) -> Result<Graph> {
    if k < 2 {
        return Err(LtdError::InvalidParameter(
            "half-graph-complement needs k >= 2".into(),
        ));
    }
    let mut edges = Vec::new();
    for u in 0..k {
        for v in u + 1..k {
            edges.push((u, v));
            edges.push((k + u, k + v));
        }
    }
    for i in 0..k {
        for j in 0..i {
            edges.push((i, k + j));
        }
    }
    let g = build(2 * k, &edges);
    if !is_twin_free(&g) {
        return Err(LtdError::Invariant("half-graph complement has twins".into()));
    }
    if k <= 4 {
        let exact = exact_min_ltd(&g, None)?;
        if exact.value != k {
            return Err(LtdError::Invariant(format!(
                "half-graph complement k={k} has LTD number {} instead of {k}",
                exact.value
            )));
        }
    }
    Ok(g)
}

/// A named family member, parseable from strings such as `cycle:6`,
/// `split-tight:3` or `two-corona:complete:4`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    TwoCorona(Box<FamilySpec>),
    SplitTight(usize),
    HalfGraphComplement(usize),
    Cycle(usize),
    Path(usize),
    Complete(usize),
    Star(usize),
}

impl FamilySpec {
    pub fn build(&self) -> Result<Graph> {
        match self {
            FamilySpec::TwoCorona(base) => two_corona(&base.build()?),
            FamilySpec::SplitTight(k) => split_tight(*k),
            FamilySpec::HalfGraphComplement(k) => half_graph_complement(*k),
            FamilySpec::Cycle(n) => Ok(cycle(*n)),
            FamilySpec::Path(n) => Ok(path(*n)),
            FamilySpec::Complete(n) => Ok(complete(*n)),
            FamilySpec::Star(k) => Ok(star(*k)),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::TwoCorona(base) => write!(f, "two-corona:{base}"),
            FamilySpec::SplitTight(k) => write!(f, "split-tight:{k}"),
            FamilySpec::HalfGraphComplement(k) => write!(f, "half-graph-complement:{k}"),
            FamilySpec::Cycle(n) => write!(f, "cycle:{n}"),
            FamilySpec::Path(n) => write!(f, "path:{n}"),
            FamilySpec::Complete(n) => write!(f, "complete:{n}"),
            FamilySpec::Star(k) => write!(f, "star:{k}"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = LtdError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || LtdError::InvalidParameter(format!("unrecognised family spec '{s}'"));
        let (name, rest) = s.split_once(':').ok_or_else(bad)?;
        if name == "two-corona" {
            return Ok(FamilySpec::TwoCorona(Box::new(rest.parse()?)));
        }
        let k: usize = rest.parse().map_err(|_| bad())?;
        Ok(match name {
            "split-tight" => FamilySpec::SplitTight(k),
            "half-graph-complement" => FamilySpec::HalfGraphComplement(k),
            "cycle" => FamilySpec::Cycle(k),
            "path" => FamilySpec::Path(k),
            "complete" => FamilySpec::Complete(k),
            "star" => FamilySpec::Star(k),
            _ => return Err(bad()),
        })
    }
}

/// Parameters of a seeded random instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomModel {
    pub class: GraphClass,
    pub n: usize,
    pub seed: u64,
    pub twin_free_required: bool,
}

impl RandomModel {
    pub fn new(class: GraphClass, n: usize, seed: u64) -> Self {
        RandomModel {
            class,
            n,
            seed,
            twin_free_required: true,
        }
    }

    /// Smallest order for which the model can be sampled.
    pub fn min_order(class: GraphClass, twin_free: bool) -> usize {
        match (class, twin_free) {
            (GraphClass::Subcubic, _) => 3,
            (_, true) => 4,
            (_, false) => 2,
        }
    }
}

/// Draws a connected, isolate-free graph of the model's class and order.
///
/// Every output passes the class recognizer and, when requested, is
/// twin-free. Candidates failing either check are rejected and redrawn up
/// to `RETRY_CAP` times.
pub fn random_instance(m: &RandomModel) -> Result<Graph> {
    let min = RandomModel::min_order(m.class, m.twin_free_required);
    if m.n < min {
        return Err(LtdError::InvalidParameter(format!(
            "random {} graphs need n >= {min}",
            m.class
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(m.seed);
    for _ in 0..RETRY_CAP {
        let g = match m.class {
            GraphClass::Split => random_split(&mut rng, m.n),
            GraphClass::Cobipartite => random_cobipartite(&mut rng, m.n),
            GraphClass::Block => random_block(&mut rng, m.n, m.twin_free_required),
            GraphClass::Subcubic => random_subcubic(&mut rng, m.n, m.twin_free_required),
            GraphClass::Outerplanar => random_outerplanar(&mut rng, m.n, m.twin_free_required),
        };
        if !is_connected(&g) || !g.is_isolate_free() {
            continue;
        }
        if m.twin_free_required && !is_twin_free(&g) {
            continue;
        }
        if !m.class.contains(&g) {
            return Err(LtdError::Invariant(format!(
                "random {} generator produced a graph outside the class",
                m.class
            )));
        }
        return Ok(g);
    }
    Err(LtdError::GenerationFailed(RETRY_CAP))
}

fn random_split(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let q = rng.random_range(2..=n - 2);
    let p = rng.random_range(0.2..0.8);
    let mut edges = Vec::new();
    for u in 0..q {
        for v in u + 1..q {
            edges.push((u, v));
        }
    }
    for s in q..n {
        let first = rng.random_range(0..q);
        edges.push((s, first));
        for c in 0..q {
            if rng.random_bool(p) {
                edges.push((s, c));
            }
        }
    }
    build(n, &edges)
}

fn random_cobipartite(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let a = rng.random_range(1..n);
    let p = rng.random_range(0.2..0.8);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if (u < a) == (v < a) || rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    build(n, &edges)
}

/// Picks a vertex that currently has a twin, if any.
fn some_twin(rng: &mut ChaCha8Rng, n: usize, edges: &[(usize, usize)]) -> Option<usize> {
    let report = twin_report(&build(n, edges));
    let members: Vec<usize> = report
        .classes
        .iter()
        .flat_map(|c| c.vertices.iter().skip(1))
        .collect();
    (!members.is_empty()).then(|| members[rng.random_range(0..members.len())])
}

fn twin_debt(n: usize, edges: &[(usize, usize)]) -> usize {
    twin_report(&build(n, edges))
        .classes
        .iter()
        .map(|c| c.vertices.len() - 1)
        .sum()
}

/// Tree of cliques grown by gluing new cliques at existing vertices. With
/// `steer`, new cliques prefer to attach at vertices that currently have a
/// twin, which makes twin-free outcomes likely.
fn random_block(rng: &mut ChaCha8Rng, n: usize, steer: bool) -> Graph {
    let first = rng.random_range(2..=n.min(4));
    let mut edges = Vec::new();
    for u in 0..first {
        for v in u + 1..first {
            edges.push((u, v));
        }
    }
    let mut order = first;
    while order < n {
        let left = n - order;
        let debt = if steer { twin_debt(order, &edges) } else { 0 };
        let anchor = if steer && debt > 0 && (left <= debt + 1 || rng.random_bool(0.7)) {
            some_twin(rng, order, &edges).expect("twin debt implies a twin")
        } else {
            rng.random_range(0..order)
        };
        let new = if steer && left <= debt + 1 {
            1
        } else {
            rng.random_range(1..=left.min(4))
        };
        let clique: Vec<usize> = std::iter::once(anchor).chain(order..order + new).collect();
        for (i, &u) in clique.iter().enumerate() {
            for &v in &clique[i + 1..] {
                edges.push((u, v));
            }
        }
        order += new;
    }
    build(n, &edges)
}

fn random_subcubic(rng: &mut ChaCha8Rng, n: usize, steer: bool) -> Graph {
    let mut deg = vec![0usize; n];
    let mut edges = Vec::new();
    // random spanning tree with maximum degree 3
    for v in 1..n {
        let open: Vec<usize> = (0..v).filter(|&u| deg[u] < 3).collect();
        let u = open[rng.random_range(0..open.len())];
        edges.push((u, v));
        deg[u] += 1;
        deg[v] += 1;
    }
    let extra = rng.random_range(0..=n / 2 + 1);
    let mut adj: HashSet<(usize, usize)> = edges.iter().copied().collect();
    let mut add = |u: usize, v: usize, deg: &mut Vec<usize>, edges: &mut Vec<(usize, usize)>| {
        let e = (u.min(v), u.max(v));
        if u != v && deg[u] < 3 && deg[v] < 3 && adj.insert(e) {
            edges.push(e);
            deg[u] += 1;
            deg[v] += 1;
        }
    };
    for _ in 0..extra {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        add(u, v, &mut deg, &mut edges);
    }
    if steer {
        for _ in 0..n {
            let Some(t) = some_twin(rng, n, &edges) else {
                break;
            };
            let v = rng.random_range(0..n);
            add(t, v, &mut deg, &mut edges);
        }
    }
    build(n, &edges)
}

/// Polygon `0..t` dissected by random non-crossing chords.
fn random_dissection(rng: &mut ChaCha8Rng, t: usize, keep: f64) -> Vec<(usize, usize)> {
    let mut edges: Vec<(usize, usize)> = (1..t).map(|i| (i - 1, i)).collect();
    edges.push((0, t - 1));
    let mut stack = vec![(0usize, t - 1)];
    while let Some((a, b)) = stack.pop() {
        if b - a < 2 {
            continue;
        }
        let apex = rng.random_range(a + 1..b);
        for (x, y) in [(a, apex), (apex, b)] {
            if y - x >= 2 && rng.random_bool(keep) {
                edges.push((x, y));
            }
            stack.push((x, y));
        }
    }
    edges
}

/// Tree of bridges and dissected polygons glued at vertices.
fn random_outerplanar(rng: &mut ChaCha8Rng, n: usize, steer: bool) -> Graph {
    let keep = rng.random_range(0.0..0.8);
    let mut edges = Vec::new();
    let mut order = 1;
    while order < n {
        let left = n - order;
        let debt = if steer { twin_debt(order, &edges) } else { 0 };
        let anchor = if steer && debt > 0 && (left <= debt + 1 || rng.random_bool(0.6)) {
            some_twin(rng, order, &edges).expect("twin debt implies a twin")
        } else {
            rng.random_range(0..order)
        };
        let new = if (steer && left <= debt + 1) || rng.random_bool(0.3) {
            1
        } else {
            rng.random_range(1..=left.min(9))
        };
        if new == 1 {
            edges.push((anchor, order));
        } else {
            let ids: Vec<usize> = std::iter::once(anchor).chain(order..order + new).collect();
            for (x, y) in random_dissection(rng, new + 1, keep) {
                edges.push((ids[x], ids[y]));
            }
        }
        order += new;
    }
    build(n, &edges)
}

/// Restrictions applied by `enumerate_connected`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EnumFilter {
    pub twin_free: bool,
    pub classes: Vec<GraphClass>,
}

impl EnumFilter {
    pub fn accepts(&self, g: &Graph) -> bool {
        (!self.twin_free || is_twin_free(g)) && self.classes.iter().all(|c| c.contains(g))
    }
}

/// Every connected graph on `n` vertices up to isomorphism, exactly once,
/// in canonical labelling, restricted by `filter`.
///
/// Graphs are grown one vertex at a time: every connected graph has a
/// vertex whose removal leaves it connected, so extending each connected
/// graph on `n - 1` vertices by a new vertex with every nonempty
/// neighborhood reaches all of them.
pub fn enumerate_connected(n: usize, filter: &EnumFilter) -> Result<Vec<Graph>> {
    if n == 0 || n > ENUMERATION_LIMIT {
        return Err(LtdError::InvalidParameter(format!(
            "enumeration supports 1 <= n <= {ENUMERATION_LIMIT}"
        )));
    }
    let mut level: Vec<u64> = vec![0];
    for order in 2..=n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for &code in &level {
            let base = decode(order - 1, code);
            for mask in 1u32..(1 << (order - 1)) {
                let mut edges = base.edges();
                edges.extend((0..order - 1).filter(|&u| mask >> u & 1 == 1).map(|u| (u, order - 1)));
                let canon = canonical_code(&build(order, &edges));
                if seen.insert(canon) {
                    next.push(canon);
                }
            }
        }
        next.sort_unstable();
        level = next;
    }
    Ok(level
        .into_iter()
        .map(|c| decode(n, c))
        .filter(|g| filter.accepts(g))
        .collect())
}

fn pair_index(u: usize, v: usize) -> usize {
    // position of {u, v}, u < v, in the upper triangle listed column by column
    v * (v - 1) / 2 + u
}

fn decode(n: usize, code: u64) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        for u in 0..v {
            if code >> pair_index(u, v) & 1 == 1 {
                edges.push((u, v));
            }
        }
    }
    build(n, &edges)
}

/// Smallest upper-triangle adjacency code over all relabellings that
/// respect the stable colour-refinement partition. Two graphs are
/// isomorphic iff their codes agree (for `n <= 11`).
pub fn canonical_code(g: &Graph) -> u64 {
    let n = g.order();
    assert!(n <= 11, "canonical codes are limited to 11 vertices");
    let colour = refine_colours(g);
    let mut cells: Vec<Vec<usize>> = Vec::new();
    let mut by_colour: Vec<usize> = (0..n).collect();
    by_colour.sort_by_key(|&v| colour[v]);
    for v in by_colour {
        match cells.last_mut() {
            Some(cell) if colour[cell[0]] == colour[v] => cell.push(v),
            _ => cells.push(vec![v]),
        }
    }
    let mut best = u64::MAX;
    let mut position = vec![0usize; n];
    place(g, &mut cells, 0, 0, &mut position, &mut best);
    best
}

fn place(
    g: &Graph,
    cells: &mut [Vec<usize>],
    cell: usize,
    next: usize,
    position: &mut [usize],
    best: &mut u64,
) {
    if cell == cells.len() {
        let mut code = 0u64;
        for (u, v) in g.edges() {
            let (a, b) = (position[u].min(position[v]), position[u].max(position[v]));
            code |= 1 << pair_index(a, b);
        }
        *best = (*best).min(code);
        return;
    }
    let len = cells[cell].len();
    permute(cells, cell, 0, len, next, g, position, best);
}

#[allow(clippy::too_many_arguments)]
fn permute(
    cells: &mut [Vec<usize>],
    cell: usize,
    k: usize,
    len: usize,
    next: usize,
    g: &Graph,
    position: &mut [usize],
    best: &mut u64,
) {
    if k == len {
        for (i, &v) in cells[cell].iter().enumerate() {
            position[v] = next + i;
        }
        place(g, cells, cell + 1, next + len, position, best);
        return;
    }
    for i in k..len {
        cells[cell].swap(k, i);
        permute(cells, cell, k + 1, len, next, g, position, best);
        cells[cell].swap(k, i);
    }
}

/// Iterated degree refinement; colours are ranks of isomorphism-invariant
/// signatures, so equal graphs up to relabelling get equal colour classes.
fn refine_colours(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let mut colour: Vec<usize> = g.degrees();
    loop {
        let signatures: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut s: Vec<usize> = g.neighbors(v).iter().map(|&w| colour[w]).collect();
                s.sort_unstable();
                (colour[v], s)
            })
            .collect();
        let mut distinct = signatures.clone();
        distinct.sort();
        distinct.dedup();
        let next: Vec<usize> = signatures
            .iter()
            .map(|s| distinct.binary_search(s).expect("signature present"))
            .collect();
        let classes = |c: &[usize]| c.iter().collect::<HashSet<_>>().len();
        if classes(&next) == classes(&colour) {
            return next;
        }
        colour = next;
    }
}

/// True iff `g` is one of `K_1`, `K_2`, `K_4`, `K_{1,3}`.
pub fn ftdom_tag(g: &Graph) -> FtdomTag {
    let n = g.order();
    let m = g.size();
    let comps = connected_components(g).len();
    match (n, m) {
        (1, 0) => FtdomTag::K1,
        (2, 1) => FtdomTag::K2,
        (4, 6) => FtdomTag::K4,
        (4, 3) if comps == 1 && g.max_degree() == 3 => FtdomTag::K13,
        _ => FtdomTag::NotInFamily,
    }
}

/// Membership in the excluded family of the subcubic bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FtdomTag {
    K1,
    K2,
    K4,
    K13,
    NotInFamily,
}

impl FtdomTag {
    pub fn name(self) -> &'static str {
        match self {
            FtdomTag::K1 => "K1",
            FtdomTag::K2 => "K2",
            FtdomTag::K4 => "K4",
            FtdomTag::K13 => "K1,3",
            FtdomTag::NotInFamily => "none",
        }
    }
}
