//! Three operations for the static page in `www/`: check a vertex set,
//! solve a graph, and generate a family member. Each takes and returns
//! plain strings so the page needs no bindings beyond these exports.

use wasm_bindgen::prelude::*;

use ltdkit::families::FamilySpec;
use ltdkit::io::{parse_graph, to_edge_list};
use ltdkit::ltd::{is_td_set, ltd_violation};
use ltdkit::report::{solve_report, SolveMode};
use ltdkit::VertexSet;

/// Largest graph the page will solve; exact search beyond this can stall
/// the tab.
pub const MAX_ORDER: usize = 400;

fn parse_set(text: &str) -> Result<Vec<usize>, String> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| format!("'{t}' is not a vertex id")))
        .collect()
}

/// TD and LTD verdicts for `set` (comma or space separated) on the graph in
/// edge-list or graph6 text, as JSON.
pub fn verify_json(graph: &str, set: &str) -> Result<String, String> {
    let g = parse_graph(graph).map_err(|e| e.to_string())?;
    let ids = parse_set(set)?;
    if let Some(v) = ids.iter().find(|&&v| v >= g.order()) {
        return Err(format!("vertex {v} out of range for a graph of order {}", g.order()));
    }
    let d: VertexSet = ids.into_iter().collect();
    let violation = ltd_violation(&g, &d);
    Ok(serde_json::json!({
        "n": g.order(),
        "set": d,
        "td": is_td_set(&g, &d),
        "ltd": violation.is_none(),
        "violation": violation,
    })
    .to_string())
}

/// Run report for `mode` (`exact`, `construct` or `auto`), as JSON.
pub fn solve_json(graph: &str, mode: &str) -> Result<String, String> {
    let g = parse_graph(graph).map_err(|e| e.to_string())?;
    if g.order() > MAX_ORDER {
        return Err(format!("the demo solves graphs of order at most {MAX_ORDER}"));
    }
    let mode = match mode {
        "exact" => SolveMode::Exact,
        "construct" => SolveMode::Construct,
        "auto" => SolveMode::Auto,
        other => return Err(format!("unknown mode '{other}'")),
    };
    let report = solve_report(&g, "input", mode, Some(2_000_000)).map_err(|e| e.to_string())?;
    let mut value = serde_json::to_value(&report).map_err(|e| e.to_string())?;
    if let Some(cert) = &report.certificate {
        value["trace"] = serde_json::json!(cert.trace);
    }
    Ok(value.to_string())
}

/// Edge list of a family member such as `two-corona:cycle:6`.
pub fn generate_text(spec: &str) -> Result<String, String> {
    let spec: FamilySpec = spec.trim().parse().map_err(|e: ltdkit::LtdError| e.to_string())?;
    spec.build().map(|g| to_edge_list(&g)).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn verify(graph: &str, set: &str) -> Result<String, JsValue> {
    verify_json(graph, set).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn solve(graph: &str, mode: &str) -> Result<String, JsValue> {
    solve_json(graph, mode).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn generate(spec: &str) -> Result<String, JsValue> {
    generate_text(spec).map_err(|e| JsValue::from_str(&e))
}
