//! Edge-list and graph6 readers and writers.
//!
//! Edge lists: a header line `n m`, then `m` lines `u v` with 0-indexed
//! endpoints. `#` starts a comment that runs to the end of the line.
//!
//! graph6: the standard printable encoding used by nauty's `geng` and
//! friends, with the optional `>>graph6<<` header.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{LtdError, Result};
use crate::graph::Graph;

const GRAPH6_HEADER: &str = ">>graph6<<";
/// Largest order graph6 can express (four-byte size form).
const GRAPH6_MAX: usize = 258_047;

/// Supported text formats.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    EdgeList,
    Graph6,
}

impl FromStr for Format {
    type Err = LtdError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edgelist" | "edge-list" | "el" => Ok(Format::EdgeList),
            "graph6" | "g6" => Ok(Format::Graph6),
            _ => Err(LtdError::InvalidParameter(format!("unknown format '{s}'"))),
        }
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> LtdError {
    LtdError::Parse { line, msg: msg.into() }
}

fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(head, _)| head).trim()
}

/// Guesses the format of `text` from its first meaningful line.
pub fn detect_format(text: &str) -> Format {
    let first = text.lines().map(strip_comment).find(|l| !l.is_empty()).unwrap_or("");
    if first.starts_with(GRAPH6_HEADER) || first.bytes().next().is_some_and(|b| (63..=126).contains(&b)) {
        Format::Graph6
    } else {
        Format::EdgeList
    }
}

/// Parses a single graph in either format.
pub fn parse_graph(text: &str) -> Result<Graph> {
    match detect_format(text) {
        Format::EdgeList => parse_edge_list(text),
        Format::Graph6 => {
            let mut graphs = parse_graph6_lines(text)?;
            match graphs.len() {
                1 => Ok(graphs.remove(0)),
                k => Err(parse_err(1, format!("expected one graph6 line, found {k}"))),
            }
        }
    }
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, strip_comment(l))).filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing 'n m' header"))?;
    let nums = |line: usize, s: &str| -> Result<Vec<usize>> {
        s.split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| parse_err(line, format!("'{t}' is not a non-negative integer"))))
            .collect()
    };
    let [n, m] = nums(hline, header)?[..] else {
        return Err(parse_err(hline, "header must be 'n m'"));
    };
    let mut edges = Vec::with_capacity(m);
    for (line, body) in lines {
        let [u, v] = nums(line, body)?[..] else {
            return Err(parse_err(line, "edge line must be 'u v'"));
        };
        for w in [u, v] {
            if w >= n {
                return Err(parse_err(line, format!("vertex {w} out of range for n = {n}")));
            }
        }
        if u == v {
            return Err(parse_err(line, format!("self-loop at {u}")));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(parse_err(hline, format!("header announces {m} edges, found {}", edges.len())));
    }
    let g = Graph::from_edges(n, &edges)?;
    if g.size() != m {
        return Err(parse_err(hline, "duplicate edges"));
    }
    Ok(g)
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.order(), g.size());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").expect("writing to a String");
    }
    out
}

/// One graph per non-empty line.
pub fn parse_graph6_lines(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| parse_graph6(l.trim()).map_err(|e| relabel_line(e, i + 1)))
        .collect()
}

fn relabel_line(e: LtdError, line: usize) -> LtdError {
    match e {
        LtdError::Parse { msg, .. } => LtdError::Parse { line, msg },
        other => other,
    }
}

pub fn parse_graph6(s: &str) -> Result<Graph> {
    let body = s.strip_prefix(GRAPH6_HEADER).unwrap_or(s).as_bytes();
    if let Some(&b) = body.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(parse_err(1, format!("byte {b:#04x} is outside the graph6 range")));
    }
    let vals: Vec<usize> = body.iter().map(|&b| usize::from(b - 63)).collect();
    let (n, rest) = match vals.as_slice() {
        [] => return Err(parse_err(1, "empty graph6 string")),
        [63, 63, ..] => return Err(parse_err(1, "graph6 orders above 258047 are not supported")),
        [63, a, b, c, rest @ ..] => ((a << 12) | (b << 6) | c, rest),
        [63, ..] => return Err(parse_err(1, "truncated graph6 size field")),
        [n, rest @ ..] => (*n, rest),
    };
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    if rest.len() != need {
        return Err(parse_err(1, format!("graph6 body has {} bytes, order {n} needs {need}", rest.len())));
    }
    let bit = |k: usize| rest[k / 6] >> (5 - k % 6) & 1 == 1;
    let mut edges = Vec::new();
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            if bit(k) {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    if (bits..need * 6).any(bit) {
        return Err(parse_err(1, "graph6 padding bits must be zero"));
    }
    Graph::from_edges(n, &edges)
}

pub fn to_graph6(g: &Graph) -> Result<String> {
    let n = g.order();
    if n > GRAPH6_MAX {
        return Err(LtdError::InvalidParameter(format!("graph6 cannot encode order {n}")));
    }
    let mut out: Vec<u8> = if n <= 62 {
        vec![n as u8]
    } else {
        vec![63, (n >> 12) as u8 & 63, (n >> 6) as u8 & 63, n as u8 & 63]
    };
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = acc << 1 | u8::from(g.has_edge(u, v));
            filled += 1;
            if filled == 6 {
                out.push(acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(acc << (6 - filled));
    }
    Ok(out.into_iter().map(|b| char::from(b + 63)).collect())
}

pub fn write_graph(g: &Graph, format: Format) -> Result<String> {
    match format {
        Format::EdgeList => Ok(to_edge_list(g)),
        Format::Graph6 => to_graph6(g).map(|s| s + "\n"),
    }
}
