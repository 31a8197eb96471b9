use crate::error::{LtdError, Result};
use crate::graph::{Graph, VertexSet};
use crate::ltd::{is_td_set, require_isolate_free};
use crate::recognize::ClassWitness;
use crate::structure::twin_report;

use super::{certify, Certificate, Theorem};

/// LTD-set of size at most `ceil(n/2)` for a twin-free cobipartite graph,
/// built from a clique bipartition `(C1, C2)`.
pub fn construct_cobipartite(g: &Graph, w: &ClassWitness) -> Result<Certificate> {
    let ClassWitness::Cobipartite { c1, c2 } = w else {
        return Err(LtdError::InvalidWitness("expected a cobipartite witness".into()));
    };
    w.validate(g)?;
    if let Some((a, b)) = twin_report(g).first_pair() {
        return Err(LtdError::HasTwins(a, b));
    }
    require_isolate_free(g)?;
    let (c1, c2) = if c1.len() <= c2.len() { (c1, c2) } else { (c2, c1) };
    if c1.len() < 2 {
        return Err(LtdError::Invariant(format!(
            "twin-free cobipartite graph with a clique of size {}",
            c1.len()
        )));
    }
    let n = g.order();
    let mut trace = vec![format!("cliques C1={c1} (smaller), C2={c2}")];
    let no_neighbor_in = |v: usize, side: &VertexSet| g.neighbors(v).iter().all(|&x| !side.contains(x));

    let set = if is_td_set(g, c1) {
        trace.push("C1 totally dominates: take C1".into());
        c1.clone()
    } else {
        let lonely: Vec<usize> = c2.iter().filter(|&v| no_neighbor_in(v, c1)).collect();
        if lonely.len() != 1 {
            return Err(LtdError::Invariant(format!(
                "{} vertices of C2 have no neighbor in C1",
                lonely.len()
            )));
        }
        let v = lonely[0];
        let x = c2.iter().find(|&x| x != v).expect("|C2| >= |C1| >= 2");
        if let Some(w) = c1.iter().find(|&w| no_neighbor_in(w, c2)) {
            trace.push(format!("{v} in C2 and {w} in C1 see nothing across: take C1 - {w} + {x}"));
            let mut d = c1.clone();
            d.remove(w);
            d.insert(x);
            d
        } else if c2.len() <= n.div_ceil(2) {
            trace.push("C2 totally dominates and is small enough: take C2".into());
            c2.clone()
        } else {
            trace.push(format!("{v} in C2 sees nothing in C1: take C1 + {x}"));
            let mut d = c1.clone();
            d.insert(x);
            d
        }
    };
    certify(g, set, Theorem::Cobipartite, n.div_ceil(2), trace)
}
