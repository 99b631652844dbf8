//! Loading graphs from files, stdin or family names.

use std::fs;
use std::io::Read;
use std::path::Path;

use meden_core::{families, parse_graph, Graph, GraphError};
use serde::Deserialize;

#[derive(Deserialize)]
struct JsonGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

/// Input problems; these end the process with exit code 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

pub fn input_error(msg: impl ToString) -> anyhow::Error {
    InputError(msg.to_string()).into()
}

/// `source` is a path, `-` for stdin, or a family name such as `C9` or `bull`
/// when no such file exists.
pub fn load_graph(source: &str) -> anyhow::Result<Graph> {
    let text = if source == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(input_error)?;
        s
    } else if Path::new(source).exists() {
        fs::read_to_string(source).map_err(|e| input_error(format!("{source}: {e}")))?
    } else if let Some(g) = families::by_name(source) {
        return Ok(g);
    } else {
        return Err(input_error(format!("{source}: no such file or graph family")));
    };
    parse_text(&text).map_err(|e| input_error(format!("{source}: {e}")))
}

/// Edge list, or JSON `{"n": .., "edges": [[u, v], ..]}`.
pub fn parse_text(text: &str) -> Result<Graph, GraphError> {
    if text.trim_start().starts_with('{') {
        let doc: JsonGraph = serde_json::from_str(text).map_err(|e| GraphError::Malformed {
            line: e.line(),
            reason: e.to_string(),
        })?;
        return Graph::new(doc.n, doc.edges);
    }
    parse_graph(text)
}

pub fn graph_json(g: &Graph) -> serde_json::Value {
    let edges: Vec<[usize; 2]> = g.edges().map(|(u, v)| [u, v]).collect();
    serde_json::json!({ "n": g.n(), "edges": edges })
}
