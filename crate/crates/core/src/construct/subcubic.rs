use serde::Serialize;

use crate::error::{LtdError, Result};
use crate::families::{ftdom_tag, FtdomTag};
use crate::graph::{Graph, VertexSet};
use crate::ltd::{exact_min_ltd, is_ltd_set};
use crate::structure::{connected_components, is_connected};

use super::{certify, identity, named, Certificate, Sub, Theorem, Trace};

/// Largest order at which a stuck reduction falls back to exact search.
const EXACT_FALLBACK_LIMIT: usize = 20;
/// Alternative reductions tried after the preferred one fails to extend.
const ALTERNATIVE_CAP: usize = 12;

/// A path whose vertices have a prescribed degree sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeSequencePath {
    pub vertices: Vec<usize>,
    pub degrees: Vec<usize>,
}

/// Every path `v_1 ... v_k` with `deg(v_i) = degrees[i]`, in lexicographic
/// order of the vertex sequence.
pub fn degree_sequence_paths(g: &Graph, degrees: &[usize]) -> Vec<DegreeSequencePath> {
    let mut out = Vec::new();
    let Some(&d0) = degrees.first() else { return out };
    for v in g.vertices().filter(|&v| g.deg(v) == d0) {
        let mut stack = vec![(vec![v], 0usize)];
        // Depth-first in increasing neighbor order keeps the output sorted.
        while let Some((path, next)) = stack.pop() {
            if path.len() == degrees.len() {
                out.push(DegreeSequencePath { vertices: path, degrees: degrees.to_vec() });
                continue;
            }
            let last = *path.last().expect("non-empty");
            let want = degrees[path.len()];
            let nbrs = g.neighbors(last);
            let Some(i) = (next..nbrs.len()).find(|&i| g.deg(nbrs[i]) == want && !path.contains(&nbrs[i]))
            else {
                continue;
            };
            stack.push((path.clone(), i + 1));
            let mut longer = path;
            longer.push(nbrs[i]);
            stack.push((longer, 0));
        }
    }
    out
}

/// LTD-set of size at most `floor(2n/3)` for a connected subcubic graph of
/// order at least 3 outside `{K_1, K_2, K_4, K_{1,3}}`.
pub fn construct_subcubic(g: &Graph) -> Result<Certificate> {
    if !is_connected(g) {
        return Err(LtdError::InvalidParameter("subcubic construction needs a connected graph".into()));
    }
    if g.max_degree() > 3 {
        return Err(LtdError::InvalidParameter(format!("maximum degree {} exceeds 3", g.max_degree())));
    }
    let tag = ftdom_tag(g);
    if tag != FtdomTag::NotInFamily {
        return Err(LtdError::ExcludedFamily(tag.name()));
    }
    if g.order() < 3 {
        return Err(LtdError::InvalidParameter("subcubic construction needs order >= 3".into()));
    }
    let mut trace = Trace::new();
    let set = solve(g, &identity(g.order()), &mut trace)?;
    certify(g, set, Theorem::Subcubic, 2 * g.order() / 3, trace.into_lines())
}

/// What a matched reduction asks for.
enum Plan {
    /// The graph is fully determined; one of these sets works.
    Direct(Vec<VertexSet>),
    /// Delete `removed`, solve each remaining component, add `extension`.
    Reduce { removed: Vec<usize>, extension: Vec<usize> },
    /// The match produces a configuration the proof rules out.
    Impossible(String),
}

struct Candidate {
    rule: String,
    plan: Plan,
}

fn solve(g: &Graph, names: &[usize], trace: &mut Trace) -> Result<VertexSet> {
    if g.order() <= 6 {
        let set = small_case(g).ok_or_else(|| {
            LtdError::Invariant(format!("no base-case set works for the order-{} graph {g:?}", g.order()))
        })?;
        trace.push(format!("order {}: base set {}", g.order(), named(&set, names)));
        return Ok(set);
    }
    let candidates = reductions(g);
    let Some(first) = candidates.first() else {
        return Err(LtdError::Invariant("no reduction applies".into()));
    };
    if let Plan::Impossible(why) = &first.plan {
        return Err(LtdError::Invariant(format!("{}: {why}", first.rule)));
    }
    for (attempt, cand) in candidates.iter().filter(|c| !matches!(c.plan, Plan::Impossible(_))).enumerate() {
        if attempt > ALTERNATIVE_CAP {
            break;
        }
        if attempt > 0 {
            trace.push(format!("fallback: trying {}", cand.rule));
        }
        if let Some(set) = apply(g, names, cand, attempt == 0, trace)? {
            return Ok(set);
        }
    }
    if g.order() <= EXACT_FALLBACK_LIMIT {
        let exact = exact_min_ltd(g, None)?;
        trace.push(format!("fallback: exact search gives {}", named(&exact.witness, names)));
        return Ok(exact.witness);
    }
    Err(LtdError::Invariant(format!(
        "no reduction extends to an LTD-set on {} vertices",
        g.order()
    )))
}

/// Runs one candidate; `None` when its sets fail verification.
fn apply(g: &Graph, names: &[usize], cand: &Candidate, primary: bool, trace: &mut Trace) -> Result<Option<VertexSet>> {
    match &cand.plan {
        Plan::Impossible(_) => Ok(None),
        Plan::Direct(options) => {
            let found = options.iter().find(|s| is_ltd_set(g, s)).cloned();
            match &found {
                Some(s) => trace.push(format!("{}: determined graph, take {}", cand.rule, named(s, names))),
                None if primary => {
                    return Err(LtdError::Invariant(format!("{}: prescribed set is not an LTD-set", cand.rule)))
                }
                None => {}
            }
            Ok(found)
        }
        Plan::Reduce { removed, extension } => {
            let rest = Sub::without(g, names, removed);
            let mut base = VertexSet::new();
            trace.push(format!(
                "{}: remove {}, extend with {}",
                cand.rule,
                named(&VertexSet::from(removed.clone()), names),
                named(&VertexSet::from(extension.clone()), names)
            ));
            for comp in connected_components(&rest.g) {
                let part = Sub::induced(&rest.g, &rest.names, comp.as_slice());
                let inner = trace.nested(|t| solve(&part.g, &part.names, t))?;
                base = base.union(&rest.lift(&part.lift(&inner)));
            }
            let with = |ext: &[usize]| base.union(&VertexSet::from(ext.to_vec()));
            let preferred = with(extension);
            if is_ltd_set(g, &preferred) {
                return Ok(Some(preferred));
            }
            // Same-size extensions drawn from the removed vertices and their
            // neighbors keep the size accounting intact.
            let mut pool: VertexSet = removed.iter().copied().collect();
            for &v in removed {
                for &w in g.neighbors(v) {
                    pool.insert(w);
                }
            }
            let found = subsets(pool.as_slice(), extension.len()).map(|e| with(&e)).find(|s| is_ltd_set(g, s));
            if let Some(s) = &found {
                trace.push(format!("fallback: extension {} does not locate; using {}", named(&VertexSet::from(extension.clone()), names), named(s, names)));
            }
            Ok(found)
        }
    }
}

/// `k`-subsets of `items` in lexicographic order.
fn subsets(items: &[usize], k: usize) -> impl Iterator<Item = Vec<usize>> + '_ {
    let n = items.len();
    let mut idx: Option<Vec<usize>> = (k <= n).then(|| (0..k).collect());
    std::iter::from_fn(move || {
        let cur = idx.clone()?;
        let out = cur.iter().map(|&i| items[i]).collect();
        let mut next = cur;
        let mut i = k;
        loop {
            if i == 0 {
                idx = None;
                break;
            }
            i -= 1;
            if next[i] < n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                idx = Some(next);
                break;
            }
        }
        Some(out)
    })
}

fn seq_name(d: &[usize]) -> String {
    let parts: Vec<String> = d.iter().map(usize::to_string).collect();
    format!("({})", parts.join(","))
}

/// Components of `g - removed` with their family tags, in the labels of `g`.
fn leftover(g: &Graph, removed: &[usize]) -> Vec<(VertexSet, FtdomTag)> {
    let (rest, map) = g.without(removed);
    connected_components(&rest)
        .into_iter()
        .map(|c| {
            let (cg, _) = rest.induced(c.as_slice());
            (c.mapped(&map), ftdom_tag(&cg))
        })
        .collect()
}

fn has_family_member(parts: &[(VertexSet, FtdomTag)]) -> bool {
    parts.iter().any(|(_, t)| *t != FtdomTag::NotInFamily)
}

fn sole_star(parts: &[(VertexSet, FtdomTag)]) -> Option<&VertexSet> {
    match parts {
        [(c, FtdomTag::K13)] => Some(c),
        _ => None,
    }
}

fn impossible(parts: &[(VertexSet, FtdomTag)]) -> Plan {
    let tags: Vec<&str> = parts.iter().map(|(_, t)| t.name()).filter(|&t| t != "none").collect();
    Plan::Impossible(format!("G' has a component in F_tdom ({})", tags.join(", ")))
}

/// All reductions applicable to a connected subcubic graph of order at
/// least 7, in the order the proof considers them: degree-1 sequences,
/// triangles, degree-2 sequences, then cubic paths.
fn reductions(g: &Graph) -> Vec<Candidate> {
    let min_deg = g.vertices().map(|v| g.deg(v)).min().unwrap_or(0);
    let mut out = Vec::new();
    if min_deg == 1 {
        const ONE: [&[usize]; 8] =
            [&[1, 3, 1], &[1, 2, 2], &[1, 2, 3, 1], &[1, 2, 3, 2, 1], &[1, 2, 3], &[1, 3, 2], &[1, 3, 3, 1], &[1, 3, 3]];
        for seq in ONE {
            for p in degree_sequence_paths(g, seq) {
                out.push(degree_one_plan(g, seq, &p.vertices));
            }
        }
        return out;
    }
    let triangles = triangles_by_preference(g);
    if !triangles.is_empty() {
        return triangles.into_iter().map(|t| triangle_plan(g, t)).collect();
    }
    let seqs: &[&[usize]] = if min_deg == 2 { &[&[2, 2, 2], &[2, 3, 2], &[2, 2, 3], &[2, 3, 3]] } else { &[&[3, 3, 3]] };
    for &seq in seqs {
        for p in degree_sequence_paths(g, seq) {
            let v = &p.vertices;
            let parts = leftover(g, v);
            let rule = format!("{} path {:?}", seq_name(seq), v);
            let plan = if seq == [2, 3, 2] && sole_star(&parts).is_some() {
                let mut nb: VertexSet = g.neighbors(v[1]).iter().copied().collect();
                nb.insert(v[1]);
                Plan::Direct(vec![nb])
            } else if has_family_member(&parts) {
                impossible(&parts)
            } else {
                Plan::Reduce { removed: v.clone(), extension: vec![v[1], v[2]] }
            };
            out.push(Candidate { rule, plan });
        }
    }
    out
}

fn degree_one_plan(g: &Graph, seq: &[usize], v: &[usize]) -> Candidate {
    let rule = format!("{} path {:?}", seq_name(seq), v);
    let parts = leftover(g, v);
    let reduce = |ext: Vec<usize>| Plan::Reduce { removed: v.to_vec(), extension: ext };
    let plan = match seq {
        [1, 3, 1] if sole_star(&parts).is_some() => {
            // Two support vertices, each with one of its leaves.
            let mut set = VertexSet::new();
            for s in g.vertices() {
                if let Some(&leaf) = g.neighbors(s).iter().find(|&&w| g.deg(w) == 1) {
                    set.insert(s);
                    set.insert(leaf);
                }
            }
            Plan::Direct(vec![set])
        }
        [1, 2, 3, 2, 1] if matches!(parts.as_slice(), [(_, FtdomTag::K2)]) => {
            let mut nb: VertexSet = g.neighbors(v[2]).iter().copied().collect();
            nb.insert(v[2]);
            Plan::Direct(vec![nb])
        }
        [1, 2, 3] if sole_star(&parts).is_some() => {
            let star = sole_star(&parts).expect("checked");
            let centre = star.iter().find(|&c| star.iter().filter(|&w| g.has_edge(c, w)).count() == 3);
            let v4 = g.neighbors(v[2]).iter().copied().find(|&w| w != v[1]);
            match (centre, v4) {
                (Some(c), Some(w)) => Plan::Direct(vec![VertexSet::from(vec![v[1], v[2], w, c])]),
                _ => impossible(&parts),
            }
        }
        [1, 3, 2] if sole_star(&parts).is_some() => {
            let cubic: Vec<usize> = g.vertices().filter(|&w| g.deg(w) == 3).collect();
            let two: Vec<usize> = g.vertices().filter(|&w| g.deg(w) == 2).collect();
            let options = subsets(&two, 2)
                .map(|pair| cubic.iter().chain(&pair).copied().collect())
                .collect();
            Plan::Direct(options)
        }
        [1, 3, 3] if has_family_member(&parts) => {
            let others: Vec<usize> = g.neighbors(v[2]).iter().copied().filter(|&w| w != v[1]).collect();
            match others.as_slice() {
                [u3, w3] if g.has_edge(*u3, *w3) && g.deg(*u3) == 2 && g.deg(*w3) == 2 => {
                    let removed = vec![v[0], v[1], v[2], *u3, *w3];
                    let rest = leftover(g, &removed);
                    if rest.len() == 1 && !has_family_member(&rest) && rest[0].0.len() >= 3 {
                        Plan::Reduce { removed, extension: vec![v[1], v[2], *u3] }
                    } else {
                        impossible(&rest)
                    }
                }
                _ => impossible(&parts),
            }
        }
        _ if has_family_member(&parts) => impossible(&parts),
        [1, 2, 3, 2, 1] => reduce(vec![v[1], v[2], v[3]]),
        _ => reduce(vec![v[1], v[2]]),
    };
    Candidate { rule, plan }
}

/// Triangles ordered by decreasing number of degree-2 vertices, then
/// lexicographically.
fn triangles_by_preference(g: &Graph) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for a in g.vertices() {
        for &b in g.neighbors(a).iter().filter(|&&b| b > a) {
            for &c in g.neighbors(b).iter().filter(|&&c| c > b) {
                if g.has_edge(a, c) {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out.sort_by_key(|t| (std::cmp::Reverse(t.iter().filter(|&&v| g.deg(v) == 2).count()), *t));
    out
}

fn triangle_plan(g: &Graph, t: [usize; 3]) -> Candidate {
    let mut t = t;
    t.sort_by_key(|&v| (g.deg(v), v));
    let [v1, v2, v3] = t;
    let rule = format!("triangle {:?}", t);
    let parts = leftover(g, &t);
    let plan = if g.deg(v1) == 2 {
        if has_family_member(&parts) {
            impossible(&parts)
        } else {
            Plan::Reduce { removed: t.to_vec(), extension: vec![v2, v3] }
        }
    } else {
        let outer = |v: usize| g.neighbors(v).iter().copied().find(|w| !t.contains(w)).expect("cubic");
        if sole_star(&parts).is_some() {
            Plan::Direct(
                t.iter()
                    .map(|&vi| {
                        let mut s: VertexSet = t.iter().copied().collect();
                        s.insert(outer(vi));
                        s
                    })
                    .collect(),
            )
        } else if let Some((edge, _)) = parts.iter().find(|(_, tag)| *tag == FtdomTag::K2) {
            let (a, b) = (edge.as_slice()[0], edge.as_slice()[1]);
            let va = t.iter().copied().find(|&x| g.has_edge(x, a));
            let vb = t.iter().copied().find(|&x| g.has_edge(x, b));
            match (va, vb) {
                (Some(va), Some(vb)) if va != vb => {
                    let vc = t.iter().copied().find(|&x| x != va && x != vb).expect("three vertices");
                    let removed = vec![va, vb, vc, a, b];
                    let rest = leftover(g, &removed);
                    if rest.len() == 1 && !has_family_member(&rest) {
                        Plan::Reduce { removed, extension: vec![b, vb, vc] }
                    } else {
                        impossible(&rest)
                    }
                }
                _ => impossible(&parts),
            }
        } else if has_family_member(&parts) {
            impossible(&parts)
        } else {
            Plan::Reduce { removed: t.to_vec(), extension: vec![v2, v3] }
        }
    };
    Candidate { rule, plan }
}

/// The explicit sets for orders 3 to 6, tried in order.
fn small_case(g: &Graph) -> Option<VertexSet> {
    let n = g.order();
    let deg2: Vec<usize> = g.vertices().filter(|&v| g.deg(v) == 2).collect();
    let cubic: Vec<usize> = g.vertices().filter(|&v| g.deg(v) == 3).collect();
    let mut options: Vec<VertexSet> = Vec::new();
    match n {
        3 => options.extend(g.edges().into_iter().map(|(a, b)| VertexSet::from([a, b]))),
        4 if cubic.is_empty() => options.extend(
            g.edges().into_iter().filter(|&(a, b)| g.deg(a) == 2 && g.deg(b) == 2).map(|(a, b)| VertexSet::from([a, b])),
        ),
        4 => {
            for &a in &deg2 {
                for &b in &cubic {
                    options.push(VertexSet::from([a, b]));
                }
            }
        }
        5 | 6 if cubic.is_empty() => {
            let want = vec![2; n - 2];
            options.extend(degree_sequence_paths(g, &want).into_iter().map(|p| p.vertices.into_iter().collect()));
        }
        5 | 6 => {
            for &v in &cubic {
                let nb = g.neighbors(v);
                let far: Vec<usize> = g.vertices().filter(|&w| w != v && !nb.contains(&w)).collect();
                for &v1 in nb {
                    for &v4 in far.iter().filter(|&&w| g.has_edge(v1, w)) {
                        for &v2 in nb.iter().filter(|&&w| w != v1) {
                            let mut s = VertexSet::from([v, v1, v2]);
                            if n == 6 {
                                s.insert(v4);
                            }
                            options.push(s);
                        }
                    }
                }
            }
        }
        _ => {}
    }
    options.into_iter().find(|s| is_ltd_set(g, s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn small_named_graphs() {
        assert_eq!(construct_subcubic(&families::complete(3)).unwrap().set.len(), 2);
        let diamond = Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap();
        let cert = construct_subcubic(&diamond).unwrap();
        assert_eq!(cert.set.len(), 2);
        assert_eq!(construct_subcubic(&families::cycle(5)).unwrap().set.len(), 3);
        let corona = families::two_corona(&families::cycle(6)).unwrap();
        assert!(construct_subcubic(&corona).unwrap().set.len() <= 12);
    }

    #[test]
    fn excluded_and_invalid() {
        assert_eq!(construct_subcubic(&families::complete(4)), Err(LtdError::ExcludedFamily("K4")));
        assert_eq!(construct_subcubic(&families::star(3)), Err(LtdError::ExcludedFamily("K1,3")));
        assert!(construct_subcubic(&families::complete(5)).unwrap_err().is_usage());
        assert!(construct_subcubic(&families::path(2).disjoint_union(&families::path(3))).unwrap_err().is_usage());
    }

    #[test]
    fn sequence_paths() {
        let p5 = families::path(5);
        let found = degree_sequence_paths(&p5, &[1, 2, 2]);
        let starts: Vec<Vec<usize>> = found.into_iter().map(|p| p.vertices).collect();
        assert_eq!(starts, vec![vec![0, 1, 2], vec![4, 3, 2]]);
    }

    #[test]
    fn cycles_and_paths() {
        for n in 3..40 {
            for g in [families::cycle(n), families::path(n)] {
                let cert = construct_subcubic(&g).unwrap();
                assert!(cert.set.len() <= 2 * n / 3);
            }
        }
    }
}
