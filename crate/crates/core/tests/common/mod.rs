//! Brute-force oracles shared by the integration tests. Everything here
//! works on plain adjacency bitmasks built from `Graph::edges`, so none of
//! it goes through the library's own algorithms.

#![allow(dead_code)]

use ltdkit::{Graph, VertexSet};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Adjacency rows of `g` as bitmasks (order at most 32).
pub fn adjacency(g: &Graph) -> Vec<u32> {
    assert!(g.order() <= 32, "oracles handle at most 32 vertices");
    let mut adj = vec![0u32; g.order()];
    for (u, v) in g.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    adj
}

pub fn mask_of(set: &VertexSet) -> u32 {
    set.iter().fold(0, |m, v| m | 1 << v)
}

/// Direct reading of the definition: every vertex has a neighbor in `d`,
/// and no two vertices outside `d` see the same part of `d`.
pub fn naive_is_ltd(adj: &[u32], d: u32) -> bool {
    let n = adj.len();
    if (0..n).any(|v| adj[v] & d == 0) {
        return false;
    }
    let outside: Vec<usize> = (0..n).filter(|&v| d >> v & 1 == 0).collect();
    for (i, &u) in outside.iter().enumerate() {
        for &v in &outside[i + 1..] {
            if adj[u] & d == adj[v] & d {
                return false;
            }
        }
    }
    true
}

/// Smallest LTD-set size by trying every subset in order of size; `None`
/// when no subset works (some vertex is isolated).
pub fn naive_min_ltd(adj: &[u32]) -> Option<usize> {
    let n = adj.len();
    assert!(n <= 20, "subset enumeration is limited to 20 vertices");
    let mut masks: Vec<u32> = (0..1u32 << n).collect();
    masks.sort_by_key(|m| m.count_ones());
    masks.into_iter().find(|&m| naive_is_ltd(adj, m)).map(|m| m.count_ones() as usize)
}

fn connected_mask(adj: &[u32], set: u32) -> bool {
    if set == 0 {
        return false;
    }
    let mut seen = 1u32 << set.trailing_zeros();
    loop {
        let mut grow = seen;
        let mut rest = seen;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            grow |= adj[v] & set;
        }
        if grow == seen {
            return seen == set;
        }
        seen = grow;
    }
}

fn touches(adj: &[u32], a: u32, b: u32) -> bool {
    let mut rest = a;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if adj[v] & b != 0 {
            return true;
        }
    }
    false
}

/// Searches every assignment of vertices to `parts` branch sets (or to
/// none) for a model of the target minor. `required(i, j)` says whether
/// branch sets `i` and `j` must touch. `group[i]` marks interchangeable
/// sets: within a group, sets are opened in index order, which removes the
/// symmetric duplicates.
fn has_minor(adj: &[u32], parts: usize, group: &[usize], required: &dyn Fn(usize, usize) -> bool) -> bool {
    fn assign(
        v: usize,
        sets: &mut Vec<u32>,
        adj: &[u32],
        group: &[usize],
        required: &dyn Fn(usize, usize) -> bool,
    ) -> bool {
        let n = adj.len();
        let parts = sets.len();
        if v == n {
            if sets.iter().any(|&s| !connected_mask(adj, s)) {
                return false;
            }
            return (0..parts).all(|i| (i + 1..parts).all(|j| !required(i, j) || touches(adj, sets[i], sets[j])));
        }
        // Not enough vertices left to open the remaining sets.
        let empty = sets.iter().filter(|&&s| s == 0).count();
        if empty > n - v {
            return false;
        }
        if assign(v + 1, sets, adj, group, required) {
            return true;
        }
        for i in 0..parts {
            let opens = sets[i] == 0;
            if opens && (0..i).any(|j| group[j] == group[i] && sets[j] == 0) {
                continue;
            }
            sets[i] |= 1 << v;
            let found = assign(v + 1, sets, adj, group, required);
            sets[i] &= !(1 << v);
            if found {
                return true;
            }
        }
        false
    }
    assign(0, &mut vec![0; parts], adj, group, required)
}

pub fn has_k4_minor(adj: &[u32]) -> bool {
    has_minor(adj, 4, &[0, 0, 0, 0], &|_, _| true)
}

/// Sets 0 and 1 form the side of size two.
pub fn has_k23_minor(adj: &[u32]) -> bool {
    has_minor(adj, 5, &[0, 0, 1, 1, 1], &|i, j| (i < 2) != (j < 2))
}

pub fn brute_outerplanar(adj: &[u32]) -> bool {
    !has_k4_minor(adj) && !has_k23_minor(adj)
}

/// Every Hamiltonian cycle, each listed once: starting at vertex 0 with
/// its second vertex smaller than its last.
pub fn hamiltonian_cycles(adj: &[u32]) -> Vec<Vec<usize>> {
    fn extend(path: &mut Vec<usize>, used: u32, adj: &[u32], out: &mut Vec<Vec<usize>>) {
        let n = adj.len();
        let last = *path.last().unwrap();
        if path.len() == n {
            if adj[last] & 1 != 0 && path[1] < path[n - 1] {
                out.push(path.clone());
            }
            return;
        }
        let mut next = adj[last] & !used;
        while next != 0 {
            let w = next.trailing_zeros() as usize;
            next &= next - 1;
            path.push(w);
            extend(path, used | 1 << w, adj, out);
            path.pop();
        }
    }
    let mut out = Vec::new();
    if adj.len() >= 3 {
        extend(&mut vec![0], 1, adj, &mut out);
    }
    out
}

/// All sets of pairwise non-crossing chords of the polygon `0, 1, ..., n-1`.
pub fn polygon_dissections(n: usize) -> Vec<Vec<(usize, usize)>> {
    let chords: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 2..n).map(move |j| (i, j)))
        .filter(|&(i, j)| !(i == 0 && j == n - 1))
        .collect();
    let crosses = |(a, b): (usize, usize), (c, d): (usize, usize)| (a < c && c < b && b < d) || (c < a && a < d && d < b);
    fn pick(
        from: usize,
        chosen: &mut Vec<(usize, usize)>,
        chords: &[(usize, usize)],
        crosses: &dyn Fn((usize, usize), (usize, usize)) -> bool,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        out.push(chosen.clone());
        for k in from..chords.len() {
            if chosen.iter().all(|&c| !crosses(c, chords[k])) {
                chosen.push(chords[k]);
                pick(k + 1, chosen, chords, crosses, out);
                chosen.pop();
            }
        }
    }
    let mut out = Vec::new();
    pick(0, &mut Vec::new(), &chords, &crosses, &mut out);
    out
}

/// A polygon with chords under a random relabeling; returns the graph and
/// its boundary cycle in the new labels.
pub fn relabeled_dissection(n: usize, chords: &[(usize, usize)], rng: &mut ChaCha8Rng) -> (Graph, Vec<usize>) {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (perm[i], perm[(i + 1) % n])).collect();
    edges.extend(chords.iter().map(|&(a, b)| (perm[a], perm[b])));
    (Graph::from_edges(n, &edges).unwrap(), perm)
}

/// Rotates and reflects a cyclic sequence so it starts at its smallest
/// element and continues to the smaller of that element's two neighbors.
pub fn normalize_cycle(cycle: &[usize]) -> Vec<usize> {
    let n = cycle.len();
    let at = (0..n).min_by_key(|&i| cycle[i]).unwrap();
    let mut out: Vec<usize> = (0..n).map(|k| cycle[(at + k) % n]).collect();
    if n > 2 && out[n - 1] < out[1] {
        out[1..].reverse();
    }
    out
}

/// `G(n, p)` with every vertex given at least one neighbor: redraws until
/// the sample is isolate-free.
pub fn random_isolate_free(n: usize, rng: &mut ChaCha8Rng) -> Graph {
    loop {
        let p: f64 = rng.random_range(0.2..0.8);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.random_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::from_edges(n, &edges).unwrap();
        if g.is_isolate_free() {
            return g;
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
