use crate::error::{LtdError, Result};
use crate::graph::{Graph, VertexSet};
use crate::ltd::require_isolate_free;
use crate::structure::is_connected;

// In a tree two vertices share at most one neighbor, so a TD-set D is
// locating iff every d in D is the only D-neighbor of at most one vertex
// outside D (its "private" vertex). The dynamic program below tracks, per
// vertex, membership and that private relation across the parent edge.

const INF: usize = usize::MAX / 4;

/// Summary a vertex passes to its parent.
#[derive(Clone, Copy, PartialEq, Eq)]
enum State {
    /// In the set, no private child.
    InFree,
    /// In the set, one private child.
    InTaken,
    /// Outside, with some other dominator than the parent.
    Out,
    /// Outside, dominated only by the parent.
    OutPrivate,
}

const STATES: [State; 4] = [State::InFree, State::InTaken, State::Out, State::OutPrivate];

impl State {
    fn index(self) -> usize {
        self as usize
    }

    fn is_in(self) -> bool {
        matches!(self, State::InFree | State::InTaken)
    }
}

#[derive(Clone)]
struct Entry {
    cost: usize,
    picks: Vec<State>,
}

/// Minimum LTD-set of a tree with at least two vertices, by dynamic
/// programming in linear time.
pub fn tree_min_ltd(g: &Graph) -> Result<VertexSet> {
    let n = g.order();
    if n == 0 || !is_connected(g) || g.size() + 1 != n {
        return Err(LtdError::InvalidParameter("expected a tree".into()));
    }
    require_isolate_free(g)?;

    let mut parent = vec![usize::MAX; n];
    let mut order = vec![0];
    parent[0] = 0;
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        i += 1;
        for &w in g.neighbors(v) {
            if parent[w] == usize::MAX {
                parent[w] = v;
                order.push(w);
            }
        }
    }
    let parent = &parent;
    let children = |v: usize| g.neighbors(v).iter().copied().filter(move |&w| parent[w] == v && w != v);

    // table[v][xp][state]
    let mut table: Vec<[[Option<Entry>; 4]; 2]> = vec![Default::default(); n];
    for &v in order.iter().rev() {
        let kids: Vec<usize> = children(v).collect();
        for xp in 0..2 {
            for xv in 0..2 {
                let results = combine_all(&kids, xp, xv, &table);
                for (state, entry) in results {
                    let slot = &mut table[v][xp][state.index()];
                    if slot.as_ref().is_none_or(|e| entry.cost < e.cost) {
                        *slot = Some(entry);
                    }
                }
            }
        }
    }

    let (root_state, _) = STATES
        .iter()
        .filter_map(|&s| table[0][0][s.index()].as_ref().map(|e| (s, e.cost)))
        .min_by_key(|&(_, c)| c)
        .ok_or_else(|| LtdError::Invariant("tree has no LTD-set".into()))?;
    let mut set = VertexSet::new();
    let mut stack = vec![(0usize, 0usize, root_state)];
    while let Some((v, xp, state)) = stack.pop() {
        if state.is_in() {
            set.insert(v);
        }
        let entry = table[v][xp][state.index()].as_ref().expect("chosen state is feasible");
        let xv = usize::from(state.is_in());
        for (c, &s) in children(v).zip(&entry.picks) {
            stack.push((c, xv, s));
        }
    }
    Ok(set)
}

/// Best entry per resulting state for vertex membership `xv` under parent
/// membership `xp`, combining the children's tables.
fn combine_all(kids: &[usize], xp: usize, xv: usize, table: &[[[Option<Entry>; 4]; 2]]) -> Vec<(State, Entry)> {
    // Key: number of children in the set (capped at 2) and a flag. With v in
    // the set the flag counts private children; with v outside it records
    // whether the first child in the set already has a private vertex.
    let key = |cnt: usize, flag: usize| cnt * 2 + flag;
    let mut layers: Vec<[(usize, u8, u8); 6]> = Vec::with_capacity(kids.len() + 1);
    let mut first = [(INF, 0u8, 0u8); 6];
    first[key(0, 0)].0 = 0;
    layers.push(first);
    for &c in kids {
        let prev = layers.last().expect("seeded");
        let mut next = [(INF, 0u8, 0u8); 6];
        for cnt in 0..3 {
            for flag in 0..2 {
                let k = key(cnt, flag);
                if prev[k].0 >= INF {
                    continue;
                }
                for s in STATES {
                    let Some(entry) = table[c][xv][s.index()].as_ref() else { continue };
                    let (cnt2, flag2) = if xv == 1 {
                        let f = flag + usize::from(s == State::OutPrivate);
                        if f > 1 {
                            continue;
                        }
                        (if s.is_in() { (cnt + 1).min(2) } else { cnt }, f)
                    } else if s.is_in() {
                        let f = if cnt == 0 { usize::from(s == State::InTaken) } else { flag };
                        ((cnt + 1).min(2), f)
                    } else {
                        (cnt, flag)
                    };
                    let cost = prev[k].0 + entry.cost;
                    let k2 = key(cnt2, flag2);
                    if cost < next[k2].0 {
                        next[k2] = (cost, k as u8, s.index() as u8);
                    }
                }
            }
        }
        layers.push(next);
    }

    let last = layers.last().expect("seeded");
    let mut out: Vec<(State, Entry)> = Vec::new();
    for cnt in 0..3 {
        for flag in 0..2 {
            let k = key(cnt, flag);
            if last[k].0 >= INF {
                continue;
            }
            let state = if xv == 1 {
                if cnt + xp == 0 {
                    continue;
                }
                if flag == 0 { State::InFree } else { State::InTaken }
            } else {
                match (xp, cnt) {
                    (0, 0) => continue,
                    (1, 0) => State::OutPrivate,
                    (0, 1) if flag == 1 => continue,
                    _ => State::Out,
                }
            };
            let cost = last[k].0 + xv;
            if out.iter().any(|(s, e)| *s == state && e.cost <= cost) {
                continue;
            }
            let mut picks = vec![State::Out; kids.len()];
            let mut cur = k;
            for i in (0..kids.len()).rev() {
                let (_, prev_key, pick) = layers[i + 1][cur];
                picks[i] = STATES[pick as usize];
                cur = prev_key as usize;
            }
            out.retain(|(s, _)| *s != state);
            out.push((state, Entry { cost, picks }));
        }
    }
    out
}
