use crate::error::{LtdError, Result};
use crate::graph::{Graph, VertexSet};
use crate::ltd::require_isolate_free;
use crate::recognize::ClassWitness;
use crate::structure::twin_report;

use super::{certify, Certificate, Theorem};

/// LTD-set of size strictly below `2n/3` for a twin-free isolate-free split
/// graph with partition `(Q, S)`.
pub fn construct_split(g: &Graph, w: &ClassWitness) -> Result<Certificate> {
    let ClassWitness::Split { q, s } = w else {
        return Err(LtdError::InvalidWitness("expected a split witness".into()));
    };
    w.validate(g)?;
    if q.len() < 2 || s.len() < 2 {
        return Err(LtdError::Hypothesis("theorem hypothesis implies n >= 4".into()));
    }
    if let Some((a, b)) = twin_report(g).first_pair() {
        return Err(LtdError::HasTwins(a, b));
    }
    require_isolate_free(g)?;
    let n = g.order();
    let bound = Theorem::Split.bound(n).expect("split has a bound");
    let mut trace = vec![format!("clique Q={q}, stable S={s}")];
    // Every s in S has a neighbor, and all of them lie in Q.
    let q_of = |v: usize| g.neighbors(v)[0];

    let set = if 3 * q.len() < 2 * n {
        trace.push("|Q| < 2n/3: take Q".into());
        q.clone()
    } else if 3 * q.len() > 2 * n {
        trace.push("|Q| > 2n/3: take S plus the smallest Q-neighbor of each s".into());
        s.iter().flat_map(|v| [v, q_of(v)]).collect()
    } else {
        let (a, b, common) = shared_neighbor(g, s).ok_or_else(|| {
            LtdError::Invariant("no two vertices of S share a neighbor in a twin-free split graph".into())
        })?;
        trace.push(format!("|Q| = 2n/3: {a} and {b} share {common}, which replaces their own Q-neighbors"));
        let mut d: VertexSet = s
            .iter()
            .filter(|&v| v != a && v != b)
            .flat_map(|v| [v, q_of(v)])
            .collect();
        for v in [a, b, common] {
            d.insert(v);
        }
        d
    };
    certify(g, set, Theorem::Split, bound, trace)
}

/// Lexicographically first pair in `s` with a common neighbor, and the
/// smallest such neighbor.
fn shared_neighbor(g: &Graph, s: &VertexSet) -> Option<(usize, usize, usize)> {
    let s = s.as_slice();
    for (i, &a) in s.iter().enumerate() {
        for &b in &s[i + 1..] {
            if let Some(&c) = g.neighbors(a).iter().find(|&&c| g.has_edge(b, c)) {
                return Some((a, b, c));
            }
        }
    }
    None
}
