use crate::error::{LtdError, Result};
use crate::graph::{Graph, VertexSet};
use crate::ltd::{exact_min_ltd, require_isolate_free};
use crate::recognize::{recognize_cobipartite, recognize_split};
use crate::structure::connected_components;

use super::{
    certify, construct_block, construct_cobipartite, construct_outerplanar, construct_split, construct_subcubic,
    Certificate, Theorem,
};

/// Order up to which a graph outside every class is solved exactly.
pub const EXACT_LIMIT: usize = 20;

/// Picks the first applicable construction (block, split, cobipartite,
/// outerplanar, subcubic) for each component; components of order at most
/// [`EXACT_LIMIT`] that no theorem covers are solved exactly.
pub fn construct_auto(g: &Graph) -> Result<Certificate> {
    componentwise(g, true)
}

/// As [`construct_auto`] without the exact fallback: every component must
/// be covered by one of the five class theorems.
pub fn construct_by_class(g: &Graph) -> Result<Certificate> {
    componentwise(g, false)
}

fn componentwise(g: &Graph, exact_fallback: bool) -> Result<Certificate> {
    require_isolate_free(g)?;
    let comps = connected_components(g);
    if comps.len() == 1 {
        return connected(g, exact_fallback);
    }
    let mut set = VertexSet::new();
    let mut bound = 0;
    let mut trace = Vec::new();
    for comp in &comps {
        let (h, map) = g.induced(comp.as_slice());
        let cert = connected(&h, exact_fallback)?;
        trace.push(format!("component {}: {} gives {}", comp, cert.theorem, cert.set.mapped(&map)));
        trace.extend(cert.trace.iter().map(|line| format!("  {line}")));
        set = set.union(&cert.set.mapped(&map));
        bound += cert.bound;
    }
    certify(g, set, Theorem::Componentwise, bound, trace)
}

type Attempt<'a> = &'a dyn Fn(&Graph) -> Result<Certificate>;

fn connected(g: &Graph, exact_fallback: bool) -> Result<Certificate> {
    let attempts: [Attempt; 5] = [
        &construct_block,
        &|g| construct_split(g, &recognize_split(g).ok_or(LtdError::NotInClass("split"))?),
        &|g| construct_cobipartite(g, &recognize_cobipartite(g).ok_or(LtdError::NotInClass("cobipartite"))?),
        &construct_outerplanar,
        &construct_subcubic,
    ];
    for attempt in attempts {
        match attempt(g) {
            Ok(cert) => return Ok(cert),
            Err(e @ (LtdError::Invariant(_) | LtdError::Unsupported(_))) => return Err(e),
            Err(_) => {}
        }
    }
    if exact_fallback && g.order() <= EXACT_LIMIT {
        let exact = exact_min_ltd(g, None)?;
        return certify(g, exact.witness, Theorem::Exact, exact.value, vec!["no class theorem applies: exact search".into()]);
    }
    Err(LtdError::Unsupported(if exact_fallback {
        format!("no class theorem applies and order {} exceeds the exact-search limit {EXACT_LIMIT}", g.order())
    } else {
        "no class theorem applies".into()
    }))
}
