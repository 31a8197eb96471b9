use std::collections::VecDeque;

use crate::error::{LtdError, Result};
use crate::graph::{Graph, VertexSet};
use crate::ltd::{is_ltd_set, require_isolate_free};
use crate::recognize::{ham_cycle_from, is_outerplanar, leg_decomposition, LegDecomposition};
use crate::structure::{block_cut_tree, bridges, is_connected, twin_report};

use super::tree::tree_min_ltd;
use super::{certify, identity, named, repair, Certificate, Sub, Theorem, Trace};

/// LTD-set of size at most `floor(2n/3)` for a connected twin-free
/// isolate-free outerplanar graph.
pub fn construct_outerplanar(g: &Graph) -> Result<Certificate> {
    check_common(g)?;
    let mut trace = Trace::new();
    let set = solve(g, &identity(g.order()), &mut trace)?;
    certify(g, set, Theorem::Outerplanar, 2 * g.order() / 3, trace.into_lines())
}

/// The leg-based construction for outerplanar graphs in which every bridge
/// cuts off at most three vertices.
pub fn smallbridge_construct(g: &Graph, ld: &LegDecomposition) -> Result<Certificate> {
    check_common(g)?;
    if is_tree(g) {
        return Err(LtdError::Hypothesis("graph is a tree".into()));
    }
    if big_bridge(g).is_some() {
        return Err(LtdError::Hypothesis("some bridge leaves two sides of order >= 4".into()));
    }
    if *ld != leg_decomposition(g)? {
        return Err(LtdError::InvalidWitness("leg decomposition does not match the graph".into()));
    }
    let mut trace = Trace::new();
    let set = smallbridge_set(g, ld, &identity(g.order()), &mut trace)?;
    certify(g, set, Theorem::Outerplanar, 2 * g.order() / 3, trace.into_lines())
}

fn check_common(g: &Graph) -> Result<()> {
    if !is_connected(g) {
        return Err(LtdError::Disconnected);
    }
    if !is_outerplanar(g) {
        return Err(LtdError::NotInClass("outerplanar"));
    }
    if let Some((a, b)) = twin_report(g).first_pair() {
        return Err(LtdError::HasTwins(a, b));
    }
    require_isolate_free(g)
}

fn is_tree(g: &Graph) -> bool {
    g.size() + 1 == g.order()
}

/// Vertices reachable from `a` without crossing the edge `ab`.
fn side_of(g: &Graph, a: usize, b: usize) -> Vec<usize> {
    let mut seen = vec![false; g.order()];
    seen[a] = true;
    let mut stack = vec![a];
    let mut out = Vec::new();
    while let Some(v) = stack.pop() {
        out.push(v);
        for &w in g.neighbors(v) {
            if !seen[w] && !(v == a && w == b) {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    out.sort_unstable();
    out
}

/// First bridge (in sorted order) whose removal leaves two components of
/// order at least 4, with the side of each endpoint.
fn big_bridge(g: &Graph) -> Option<(usize, usize, Vec<usize>, Vec<usize>)> {
    bridges(g).into_iter().find_map(|(a, b)| {
        let sa = side_of(g, a, b);
        let n = g.order();
        (sa.len() >= 4 && n - sa.len() >= 4).then(|| {
            let sb = side_of(g, b, a);
            (a, b, sa, sb)
        })
    })
}

fn solve(g: &Graph, names: &[usize], trace: &mut Trace) -> Result<VertexSet> {
    if !is_connected(g) || !twin_report(g).is_twin_free() || !g.is_isolate_free() {
        return Err(LtdError::Invariant(format!(
            "recursive instance on {} is not connected, twin-free and isolate-free",
            VertexSet::from(names.to_vec())
        )));
    }
    if is_tree(g) {
        let set = tree_min_ltd(g)?;
        trace.push(format!("tree on {} vertices: optimal set {}", g.order(), named(&set, names)));
        return Ok(set);
    }
    match big_bridge(g) {
        None => {
            let ld = leg_decomposition(g).map_err(|e| LtdError::Invariant(format!("leg decomposition: {e}")))?;
            smallbridge_set(g, &ld, names, trace)
        }
        Some((a, b, sa, sb)) => {
            trace.push(format!("bridge {}-{} splits off sides of order {} and {}", names[a], names[b], sa.len(), sb.len()));
            split_at_bridge(g, names, (a, sa), (b, sb), trace)
        }
    }
}

struct Side {
    /// Endpoint of the bridge on this side.
    end: usize,
    sub: Sub,
    twin_free: bool,
}

fn split_at_bridge(
    g: &Graph,
    names: &[usize],
    (a, sa): (usize, Vec<usize>),
    (b, sb): (usize, Vec<usize>),
    trace: &mut Trace,
) -> Result<VertexSet> {
    let make = |end: usize, verts: &[usize]| {
        let sub = Sub::induced(g, names, verts);
        let twin_free = twin_report(&sub.g).is_twin_free();
        Side { end, sub, twin_free }
    };
    let sides = [make(a, &sa), make(b, &sb)];
    if sides.iter().all(|s| s.twin_free) {
        trace.push("both sides twin-free: recurse on each".into());
        let mut out = VertexSet::new();
        for s in &sides {
            let inner = trace.nested(|t| solve(&s.sub.g, &s.sub.names, t))?;
            out = out.union(&s.sub.lift(&inner));
        }
        return Ok(out);
    }

    // Case 1: some side X with twins stays twin-free after removing its
    // bridge endpoint v, which moves to the other side as a leaf.
    for (xi, yi) in [(0, 1), (1, 0)] {
        let (x, y) = (&sides[xi], &sides[yi]);
        if x.twin_free {
            continue;
        }
        let (v, _) = twin_of_endpoint(x)?;
        let x_minus_v = Sub::without(g, names, &[complement(g, &x.sub.map), vec![v]].concat());
        if !twin_report(&x_minus_v.g).is_twin_free() {
            continue;
        }
        trace.push(format!("case 1: side of {} stays twin-free without it", names[v]));
        let s1 = trace.nested(|t| solve(&x_minus_v.g, &x_minus_v.names, t))?;
        let mut y_plus: Vec<usize> = y.sub.map.clone();
        y_plus.push(v);
        let y_plus = Sub::induced(g, names, &y_plus);
        let s2 = if twin_report(&y_plus.g).is_twin_free() {
            trace.push(format!("other side plus leaf {} is twin-free: recurse", names[v]));
            let inner = trace.nested(|t| solve(&y_plus.g, &y_plus.names, t))?;
            y_plus.lift(&inner)
        } else {
            if !y.twin_free {
                return Err(LtdError::Invariant("both G2' and G2 have twins".into()));
            }
            trace.push(format!("other side plus leaf {} has twins: recurse without it", names[v]));
            let inner = trace.nested(|t| solve(&y.sub.g, &y.sub.names, t))?;
            y.sub.lift(&inner)
        };
        return Ok(x_minus_v.lift(&s1).union(&s2));
    }

    // Case 2: each side with twins gets a set containing its endpoint that
    // stays locating when the bridge is added back.
    trace.push("case 2: removing the endpoint leaves twins".into());
    let mut out = VertexSet::new();
    for s in &sides {
        let part = if s.twin_free {
            let inner = trace.nested(|t| solve(&s.sub.g, &s.sub.names, t))?;
            s.sub.lift(&inner)
        } else {
            endpoint_set(g, names, s, trace)?
        };
        out = out.union(&part);
    }
    Ok(out)
}

/// All vertices of `g` outside `keep`.
fn complement(g: &Graph, keep: &[usize]) -> Vec<usize> {
    let mut inside = vec![false; g.order()];
    for &v in keep {
        inside[v] = true;
    }
    g.vertices().filter(|&v| !inside[v]).collect()
}

/// The endpoint `v` of a side with twins and its twin `u`, both in the
/// parent's labels. The side has exactly one twin pair and it contains `v`.
fn twin_of_endpoint(side: &Side) -> Result<(usize, usize)> {
    let pairs = twin_report(&side.sub.g).pairs();
    let local_v = side.sub.map.iter().position(|&w| w == side.end).expect("endpoint in side");
    match pairs.as_slice() {
        [(p, q)] if *p == local_v => Ok((side.end, side.sub.map[*q])),
        [(p, q)] if *q == local_v => Ok((side.end, side.sub.map[*p])),
        _ => Err(LtdError::Invariant(format!(
            "side with twins has {} twin pairs not all at the bridge endpoint",
            pairs.len()
        ))),
    }
}

/// LTD-set of a side `G1` (with twins `v`, `u`) that contains `v` and stays
/// an LTD-set when the bridge and its far endpoint are added back.
fn endpoint_set(g: &Graph, names: &[usize], side: &Side, trace: &mut Trace) -> Result<VertexSet> {
    let (v, u) = twin_of_endpoint(side)?;
    let in_side = |w: &usize| side.sub.map.binary_search(w).is_ok();
    let others: Vec<usize> = g.neighbors(v).iter().copied().filter(|w| *w != u && in_side(w)).collect();
    let outside = complement(g, &side.sub.map);
    let drop = |extra: &[usize]| Sub::without(g, names, &[outside.as_slice(), extra].concat());
    let (s, t) = match others.as_slice() {
        [s] => (*s, None),
        [p, q] => {
            // In G1 - v the twins are u and t.
            let g1v = drop(&[v]);
            let lu = g1v.map.iter().position(|&w| w == u).expect("u in G1 - v");
            let pairs = twin_report(&g1v.g).pairs();
            let twin_with_u = |w: usize| {
                let lw = g1v.map.iter().position(|&x| x == w).expect("neighbor in G1 - v");
                pairs.iter().any(|&(a, b)| (a, b) == (lu.min(lw), lu.max(lw)))
            };
            match (twin_with_u(*p), twin_with_u(*q)) {
                (true, false) => (*q, Some(*p)),
                (false, true) => (*p, Some(*q)),
                _ => return Err(LtdError::Invariant("no unique twin of u among s, t".into())),
            }
        }
        _ => return Err(LtdError::Invariant(format!("bridge endpoint has {} other neighbors", others.len()))),
    };
    let star = drop(&[v, t.unwrap_or(u)]);
    trace.push(format!(
        "endpoint {} with twin {}, s={}{}",
        names[v],
        names[u],
        names[s],
        t.map(|t| format!(", t={}", names[t])).unwrap_or_default()
    ));
    let with = |extra: &[usize]| VertexSet::from(extra.to_vec());
    if star.g.order() == 2 {
        trace.push("G1* is K2: take v, s".into());
        return Ok(with(&[v, s]));
    }
    if twin_report(&star.g).is_twin_free() {
        trace.push("G1* twin-free: recurse and add v".into());
        let inner = trace.nested(|tr| solve(&star.g, &star.names, tr))?;
        return Ok(star.lift(&inner).union(&with(&[v])));
    }
    let Some(t) = t else {
        return Err(LtdError::Invariant("G1* has twins although v has one other neighbor".into()));
    };
    let star_u = drop(&[v, t, u]);
    if star_u.g.order() == 2 {
        trace.push("G1* - u is K2: take v, s, u".into());
        return Ok(with(&[v, s, u]));
    }
    if !twin_report(&star_u.g).is_twin_free() {
        return Err(LtdError::Invariant("G1* - u has twins".into()));
    }
    trace.push("G1* - u twin-free: recurse and add v, u".into());
    let inner = trace.nested(|tr| solve(&star_u.g, &star_u.names, tr))?;
    Ok(star_u.lift(&inner).union(&with(&[v, u])))
}

/// Steps 1-4 of the leg construction, block by block.
fn smallbridge_set(g: &Graph, ld: &LegDecomposition, names: &[usize], trace: &mut Trace) -> Result<VertexSet> {
    let core = Sub::induced(g, names, ld.core.as_slice());
    let bct = block_cut_tree(&core.g);
    if !is_connected(&core.g) || bct.blocks.iter().any(|b| b.len() < 3) {
        return Err(LtdError::Invariant("core is not a connected union of cycles-with-chords".into()));
    }
    let nb = bct.blocks.len();
    let cut_count = |b: &VertexSet| b.iter().filter(|&v| bct.cut_vertices.contains(v)).count();
    let root = (0..nb).find(|&i| cut_count(&bct.blocks[i]) <= 1).expect("block-cut tree has a leaf");

    // Breadth-first block order; attach[i] is the cut vertex c_i.
    let mut order = Vec::with_capacity(nb);
    let mut attach: Vec<Option<usize>> = vec![None; nb];
    let mut seen = vec![false; nb];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(i) = queue.pop_front() {
        order.push(i);
        for c in bct.blocks[i].iter().filter(|&v| bct.cut_vertices.contains(v)) {
            for j in bct.blocks_of(c) {
                if !seen[j] {
                    seen[j] = true;
                    attach[j] = Some(c);
                    queue.push_back(j);
                }
            }
        }
    }

    let n = g.order();
    let mut has_legs = vec![false; n];
    let mut short_leg = vec![false; n];
    for leg in &ld.legs {
        has_legs[leg[0]] = true;
        if leg.len() == 2 {
            short_leg[leg[0]] = true;
        }
    }
    let mut s = VertexSet::new();
    let mut owner_seen = vec![false; n];

    for &i in &order {
        let verts: Vec<usize> = bct.blocks[i].iter().map(|v| core.map[v]).collect();
        let c = attach[i].map(|v| core.map[v]);
        let block = Sub::induced(g, names, &verts);
        let start_local = match c {
            Some(cv) => block.map.iter().position(|&v| v == cv).expect("c_i in block"),
            None => 0,
        };
        let cyc: Vec<usize> =
            ham_cycle_from(&block.g, start_local)?.order.into_iter().map(|v| block.map[v]).collect();
        trace.push(format!(
            "block {} with cycle {:?}{}",
            named(&VertexSet::from(verts.clone()), names),
            cyc.iter().map(|&v| names[v]).collect::<Vec<_>>(),
            c.map(|v| format!(", attached at {}", names[v])).unwrap_or_default()
        ));

        // Step 1: legs owned by this block.
        let owned: Vec<usize> = cyc.iter().copied().filter(|&v| Some(v) != c && !owner_seen[v]).collect();
        let mut local: Vec<usize> = owned.clone();
        for &v in &owned {
            owner_seen[v] = true;
            for leg in ld.legs_at(v) {
                local.extend(&leg[1..]);
                let pick: &[usize] = match leg.len() - 1 {
                    1 => &leg[..1],
                    2 => &leg[..2],
                    3 => &leg[1..3],
                    k => return Err(LtdError::Invariant(format!("leg of length {k}"))),
                };
                for &w in pick {
                    s.insert(w);
                }
            }
        }

        // The cycle direction is free; when the first direction leaves a
        // vertex of this block undominated or unlocated, the reverse is used.
        let forward = cycle_steps(&cyc, c, &s, &has_legs, &short_leg);
        let picked = if locally_valid(g, &local, &s.union(&forward)) {
            forward
        } else {
            let mut rev = cyc.clone();
            rev[1..].reverse();
            let backward = cycle_steps(&rev, c, &s, &has_legs, &short_leg);
            if locally_valid(g, &local, &s.union(&backward)) {
                trace.push("  reversed cycle direction".into());
                backward
            } else {
                forward
            }
        };
        s = s.union(&picked);
        trace.push(format!("  selected so far: {}", named(&s, names)));
    }
    if !is_ltd_set(g, &s) {
        let fixed = repair(g, &s);
        trace.push(format!("fallback: repaired to {}", named(&fixed, names)));
        return Ok(fixed);
    }
    Ok(s)
}

/// Steps 2 to 4 on one block cycle `cyc` (starting at `c` when present);
/// returns the cycle vertices to add to `s`.
fn cycle_steps(cyc: &[usize], c: Option<usize>, s: &VertexSet, has_legs: &[bool], short_leg: &[bool]) -> VertexSet {
    let mut s = s.clone();
    let mut added = VertexSet::new();
    let mut add = |s: &mut VertexSet, v: usize| {
        s.insert(v);
        added.insert(v);
    };
    let len = cyc.len();
    let at = |j: isize| cyc[j.rem_euclid(len as isize) as usize];
    let is_c = |v: usize| Some(v) == c;

    // Steps 2 and 3: cycle vertices with a leg of length 1.
    for j in 0..len as isize {
        let vj = at(j);
        if is_c(vj) || !short_leg[vj] {
            continue;
        }
        let (prev, next) = (at(j - 1), at(j + 1));
        let mut step2 = false;
        if has_legs[prev] {
            step2 = true;
            if is_c(next) {
                add(&mut s, prev);
            } else if !has_legs[next] {
                add(&mut s, next);
            }
        }
        if has_legs[next] {
            step2 = true;
            if is_c(prev) {
                add(&mut s, next);
            } else if !has_legs[prev] {
                add(&mut s, prev);
            }
        }
        if step2 {
            continue;
        }
        let ni = len as isize - 1;
        let v0_is_c = is_c(at(0));
        let pick = if (j == 1 || j == ni) && !v0_is_c {
            at(0)
        } else if j == ni && v0_is_c {
            at(ni - 1)
        } else if j == 2 {
            at(1)
        } else {
            at(j + 1)
        };
        add(&mut s, pick);
    }

    // Step 4: every third remaining cycle vertex stays out.
    let rest: Vec<usize> = cyc.iter().copied().filter(|&v| !is_c(v) && !s.contains(v)).collect();
    if let Some(last) = rest.len().checked_sub(1) {
        for (j, &v) in rest.iter().enumerate() {
            let mut take = j % 3 != 0;
            if last % 3 == 1 {
                if j == last {
                    take = false;
                } else if j + 1 == last {
                    take = true;
                }
            }
            if take {
                add(&mut s, v);
            }
        }
    }
    added
}

/// Whether every vertex of `local` has a neighbor in `s` and the ones
/// outside `s` have pairwise distinct traces on it.
fn locally_valid(g: &Graph, local: &[usize], s: &VertexSet) -> bool {
    let trace = |v: usize| -> Vec<usize> { g.neighbors(v).iter().copied().filter(|&w| s.contains(w)).collect() };
    if local.iter().any(|&v| trace(v).is_empty()) {
        return false;
    }
    let mut outside: Vec<Vec<usize>> = local.iter().copied().filter(|&v| !s.contains(v)).map(trace).collect();
    let total = outside.len();
    outside.sort();
    outside.dedup();
    outside.len() == total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn cycles() {
        let c9 = families::cycle(9);
        let cert = smallbridge_construct(&c9, &leg_decomposition(&c9).unwrap()).unwrap();
        assert_eq!(cert.set, VertexSet::from([1, 2, 4, 5, 7, 8]));
        assert_eq!(construct_outerplanar(&families::cycle(7)).unwrap().set.len(), 4);
        assert_eq!(construct_outerplanar(&families::cycle(5)).unwrap().set, VertexSet::from([1, 2, 3]));
    }

    #[test]
    fn cycle_corona_takes_two_per_leg() {
        let g = families::two_corona(&families::cycle(6)).unwrap();
        let cert = construct_outerplanar(&g).unwrap();
        let expected: VertexSet = (0..12).collect();
        assert_eq!(cert.set, expected);
    }

    #[test]
    fn trees_and_bridged_cycles() {
        let p7 = families::path(7);
        assert_eq!(construct_outerplanar(&p7).unwrap().set.len(), 4);
        // Two 5-cycles joined by a bridge.
        let c5 = families::cycle(5);
        let mut edges = c5.disjoint_union(&c5).edges();
        edges.push((0, 5));
        let g = Graph::from_edges(10, &edges).unwrap();
        let cert = construct_outerplanar(&g).unwrap();
        assert!(cert.set.len() <= 6);
    }

    #[test]
    fn rejections() {
        assert_eq!(construct_outerplanar(&families::complete(4)), Err(LtdError::NotInClass("outerplanar")));
        assert!(matches!(construct_outerplanar(&families::star(3)), Err(LtdError::HasTwins(..))));
    }

    /// A 5-cycle on 0..4 sharing vertex 4 with a 22-cycle `v_j = 4 + j`
    /// carrying chords and legs of every admissible shape.
    fn legged_block() -> (Graph, Vec<usize>, Vec<usize>) {
        let v = |j: usize| 4 + j;
        let mut edges: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        edges.extend((0..22).map(|j| (v(j), v((j + 1) % 22))));
        for (a, b) in [(1, 19), (19, 16), (16, 2), (3, 5), (5, 11), (11, 14), (14, 12), (15, 5)] {
            edges.push((v(a), v(b)));
        }
        let mut next = 26;
        let mut black_legs = Vec::new();
        let lengths: [(usize, &[usize]); 7] =
            [(1, &[1]), (12, &[1]), (17, &[1]), (7, &[1, 2]), (8, &[3, 3]), (10, &[2, 2]), (11, &[3, 2])];
        for (j, legs) in lengths {
            for &len in legs {
                let mut prev = v(j);
                for step in 1..=len {
                    edges.push((prev, next));
                    if (len == 2 && step == 1) || (len == 3 && step < 3) {
                        black_legs.push(next);
                    }
                    prev = next;
                    next += 1;
                }
            }
        }
        let g = Graph::from_edges(next, &edges).unwrap();
        let white: Vec<usize> = [0, 3, 8, 15, 21].into_iter().map(v).collect();
        (g, white, black_legs)
    }

    #[test]
    fn legged_block_matches_hand_construction() {
        let (g, white, black_legs) = legged_block();
        let cert = smallbridge_construct(&g, &leg_decomposition(&g).unwrap()).unwrap();
        assert!(!cert.trace.iter().any(|l| l.contains("fallback")));
        let cycle_part: Vec<usize> = (4..26).filter(|&x| cert.set.contains(x)).collect();
        let expected: Vec<usize> = (5..26).filter(|x| !white.contains(x)).collect();
        assert_eq!(cycle_part, expected);
        let leg_part: Vec<usize> = (26..g.order()).filter(|&x| cert.set.contains(x)).collect();
        assert_eq!(leg_part, black_legs);
    }
}
