//! Per-instance run reports, serialized one JSON object per line.

use std::collections::BTreeMap;
use std::fmt;
use serde::{Serialize, Serializer};

use crate::construct::{construct_by_class, Certificate, Theorem, EXACT_LIMIT};
use crate::error::{LtdError, Result};
use crate::graph::{Graph, VertexSet};
use crate::ltd::{exact_min_ltd, is_ltd_set, ExactResult};
use crate::recognize::{classes_of, GraphClass};
use crate::structure::is_twin_free;

/// A non-negative fraction in lowest terms, serialized as `"p/q"` (or
/// `"p"` when `q = 1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rational {
    pub num: usize,
    pub den: usize,
}

impl Rational {
    pub fn new(num: usize, den: usize) -> Self {
        assert!(den > 0, "zero denominator");
        let g = gcd(num, den);
        Rational { num: num / g, den: den / g }
    }

    pub fn floor(self) -> usize {
        self.num / self.den
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a.max(1) } else { gcd(b, a % b) }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// How `solve` obtains its set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveMode {
    /// Branch-and-bound minimum.
    Exact,
    /// The class constructions only.
    Construct,
    /// Exact minimum when the order allows, plus a class certificate when
    /// one applies.
    Auto,
}

impl SolveMode {
    pub fn name(self) -> &'static str {
        match self {
            SolveMode::Exact => "exact",
            SolveMode::Construct => "construct",
            SolveMode::Auto => "auto",
        }
    }
}

/// Outcome of one instance.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub graph_id: String,
    pub n: usize,
    pub m: usize,
    pub classes: Vec<GraphClass>,
    pub twin_free: bool,
    pub gamma_tl: Option<usize>,
    /// False when the exact search stopped at its node budget.
    pub optimality_checked: Option<bool>,
    pub certificate_size: Option<usize>,
    /// The certificate's theorem bound, or the conjectured `2n/3` when no
    /// theorem was used.
    pub bound: Rational,
    /// Whether `bound` must be beaten strictly.
    pub bound_strict: bool,
    pub method: String,
    pub verified: bool,
    pub elapsed_ms: u64,
    /// The reported set: the certificate when there is one, else the exact
    /// witness.
    pub set: Option<VertexSet>,
    pub seed: Option<u64>,
    pub flags: BTreeMap<String, String>,
    /// The full certificate behind `certificate_size`, kept out of the JSON
    /// line.
    #[serde(skip)]
    pub certificate: Option<Certificate>,
}

impl RunReport {
    /// Whether the reported size respects `bound`.
    pub fn within_bound(&self) -> bool {
        let Some(size) = self.certificate_size.or(self.gamma_tl) else { return false };
        let scaled = size * self.bound.den;
        if self.bound_strict { scaled < self.bound.num } else { scaled <= self.bound.num }
    }
}

/// Milliseconds since the call. `wasm32-unknown-unknown` has no std clock,
/// so builds for it always report 0.
#[cfg(not(all(target_arch = "wasm32", target_os = "unknown")))]
fn stopwatch() -> impl Fn() -> u64 {
    let start = std::time::Instant::now();
    move || start.elapsed().as_millis() as u64
}

#[cfg(all(target_arch = "wasm32", target_os = "unknown"))]
fn stopwatch() -> impl Fn() -> u64 {
    || 0
}

/// Runs `mode` on `g` and reports the result. Graphs with an isolated
/// vertex fail with [`LtdError::IsolatedVertex`].
pub fn solve_report(g: &Graph, graph_id: &str, mode: SolveMode, budget: Option<u64>) -> Result<RunReport> {
    let elapsed_ms = stopwatch();
    let n = g.order();
    if let Some(v) = g.vertices().find(|&v| g.deg(v) == 0) {
        return Err(LtdError::IsolatedVertex(v));
    }
    let (exact, cert): (Option<ExactResult>, Option<Certificate>) = match mode {
        SolveMode::Exact => (Some(exact_min_ltd(g, budget)?), None),
        SolveMode::Construct => (None, Some(construct_by_class(g)?)),
        SolveMode::Auto => {
            let exact = if n <= EXACT_LIMIT { Some(exact_min_ltd(g, budget)?) } else { None };
            let cert = match construct_by_class(g) {
                Ok(c) => Some(c),
                Err(e @ LtdError::Invariant(_)) => return Err(e),
                Err(_) if exact.is_some() => None,
                Err(e) => return Err(e),
            };
            (exact, cert)
        }
    };
    let conjecture = Rational::new(2 * n, 3);
    let (bound, bound_strict, method) = match &cert {
        Some(c) => match c.theorem.rational_bound(n) {
            Some((p, q)) => (Rational::new(p, q), c.theorem == Theorem::Split, format!("{}:{}", mode.name(), c.theorem)),
            None => (Rational::new(c.bound, 1), false, format!("{}:{}", mode.name(), c.theorem)),
        },
        None => (conjecture, false, mode.name().to_string()),
    };
    let set = cert.as_ref().map(|c| c.set.clone()).or_else(|| exact.as_ref().map(|e| e.witness.clone()));
    let verified = set.as_ref().is_some_and(|s| is_ltd_set(g, s));
    Ok(RunReport {
        graph_id: graph_id.to_string(),
        n,
        m: g.size(),
        classes: classes_of(g),
        twin_free: is_twin_free(g),
        gamma_tl: exact.as_ref().map(|e| e.value),
        optimality_checked: exact.as_ref().map(|e| e.optimality_checked),
        certificate_size: cert.as_ref().map(|c| c.set.len()),
        bound,
        bound_strict,
        method,
        verified,
        elapsed_ms: elapsed_ms(),
        set,
        seed: None,
        flags: BTreeMap::new(),
        certificate: cert,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn rational_display() {
        assert_eq!(Rational::new(12, 3).to_string(), "4");
        assert_eq!(Rational::new(26, 3).to_string(), "26/3");
        assert_eq!(Rational::new(8, 2).floor(), 4);
    }

    #[test]
    fn modes() {
        let c6 = families::cycle(6);
        let r = solve_report(&c6, "c6", SolveMode::Auto, None).unwrap();
        assert_eq!(r.gamma_tl, Some(4));
        assert!(r.verified && r.within_bound());
        let corona = families::two_corona(&families::complete(6)).unwrap();
        let r = solve_report(&corona, "k6p2", SolveMode::Construct, None).unwrap();
        assert!(r.certificate_size.unwrap() <= 12 && r.verified);
        assert_eq!(r.method, "construct:block");
        let r = solve_report(&families::split_tight(3).unwrap(), "s3", SolveMode::Exact, None).unwrap();
        assert_eq!(r.gamma_tl, Some(5));
        assert_eq!(solve_report(&Graph::empty(3), "e", SolveMode::Exact, None).unwrap_err(), LtdError::IsolatedVertex(0));
    }
}
