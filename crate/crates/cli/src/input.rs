use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;

use ltdkit::io::{detect_format, parse_edge_list, parse_graph6, Format};
use ltdkit::Graph;

use crate::Failure;

fn is_stdio(path: &Path) -> bool {
    path.as_os_str() == "-"
}

/// Reads one graph from a file or stdin, detecting the format unless given.
pub fn read_graph(path: &Path, format: Option<Format>) -> Result<Graph, Failure> {
    let text = if is_stdio(path) {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Usage(format!("reading stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Usage(format!("reading {}: {e}", path.display())))?
    };
    let graph = match format.unwrap_or_else(|| detect_format(&text)) {
        Format::EdgeList => parse_edge_list(&text),
        Format::Graph6 => parse_graph6(text.trim()),
    };
    graph.map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

pub fn write_output(path: &Path, text: &str) -> Result<(), Failure> {
    let result = if is_stdio(path) {
        io::stdout().write_all(text.as_bytes())
    } else {
        fs::write(path, text)
    };
    result.map_err(|e| Failure::Usage(format!("writing {}: {e}", path.display())))
}
