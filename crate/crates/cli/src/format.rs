//! Text format for graphs and JSON format for decompositions.
//!
//! Graph files start with `p <n> <m>`, followed by `m` lines `e <u> <v> [<weight>]`
//! and optional lines `v <u> <weight>`. Lines starting with `c` are comments,
//! indices are 0-based and missing weights default to 1.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use biptw::{Graph, RootedDecomposition, Vertex, VertexSet, Weight};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

/// Parses a graph in the text format; `source` names the input in error messages.
pub fn parse_graph(text: &str, source: &str) -> CliResult<Graph> {
    let fail = |line: usize, message: String| CliError::Format {
        path: source.to_string(),
        line,
        message,
    };
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, Vertex, Vertex, Option<Weight>)> = Vec::new();
    let mut vertex_weights: Vec<(usize, Vertex, Weight)> = Vec::new();
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        let number = |i: usize| -> CliResult<u64> {
            let field = fields
                .get(i)
                .ok_or_else(|| fail(line, format!("missing field {}", i + 1)))?;
            field
                .parse()
                .map_err(|_| fail(line, format!("`{field}` is not a non-negative integer")))
        };
        match (fields[0], header) {
            ("p", None) if fields.len() == 3 => header = Some((number(1)? as usize, number(2)? as usize)),
            ("p", None) => return Err(fail(line, "expected `p <n> <m>`".into())),
            ("p", Some(_)) => return Err(fail(line, "second header line".into())),
            (_, None) => return Err(fail(line, "expected the header `p <n> <m>` first".into())),
            ("e", Some(_)) if fields.len() == 3 || fields.len() == 4 => {
                let weight = if fields.len() == 4 { Some(number(3)?) } else { None };
                edges.push((line, number(1)? as usize, number(2)? as usize, weight));
            }
            ("e", Some(_)) => return Err(fail(line, "expected `e <u> <v> [<weight>]`".into())),
            ("v", Some(_)) if fields.len() == 3 => vertex_weights.push((line, number(1)? as usize, number(2)?)),
            ("v", Some(_)) => return Err(fail(line, "expected `v <u> <weight>`".into())),
            (other, Some(_)) => return Err(fail(line, format!("unknown line type `{other}`"))),
        }
    }
    let (n, m) = header.ok_or_else(|| fail(0, "missing header `p <n> <m>`".into()))?;
    if edges.len() != m {
        return Err(fail(
            0,
            format!("header announces {m} edges but {} are listed", edges.len()),
        ));
    }
    let mut g = Graph::new(n);
    for &(line, u, v, _) in &edges {
        match g.add_edge(u, v) {
            Ok(true) => {}
            Ok(false) => return Err(fail(line, format!("duplicate edge {u}-{v}"))),
            Err(e) => return Err(fail(line, e.to_string())),
        }
    }
    if edges.iter().any(|e| e.3.is_some()) {
        for &(_, u, v, weight) in &edges {
            g.set_edge_weight(u, v, weight.unwrap_or(1))
                .expect("edge was just added");
        }
    }
    if !vertex_weights.is_empty() {
        for v in 0..n {
            g.set_vertex_weight(v, 1);
        }
        for &(line, v, weight) in &vertex_weights {
            if v >= n {
                return Err(fail(line, format!("vertex {v} out of range for {n} vertices")));
            }
            g.set_vertex_weight(v, weight);
        }
    }
    Ok(g)
}

/// Renders `g` in the text format; weights are written only when `g` carries them.
pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("p {} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        if g.has_edge_weights() {
            writeln!(out, "e {u} {v} {}", g.edge_weight(u, v)).unwrap();
        } else {
            writeln!(out, "e {u} {v}").unwrap();
        }
    }
    if g.has_vertex_weights() {
        for v in g.vertices() {
            writeln!(out, "v {v} {}", g.vertex_weight(v)).unwrap();
        }
    }
    out
}

/// One node of the decomposition JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeRecord {
    pub id: usize,
    pub parent: usize,
    pub alpha: Vec<Vertex>,
    pub beta: Vec<Vertex>,
}

/// The decomposition JSON document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionRecord {
    pub root: usize,
    pub nodes: Vec<NodeRecord>,
}

impl From<&RootedDecomposition> for DecompositionRecord {
    fn from(d: &RootedDecomposition) -> Self {
        let nodes = (0..d.node_count())
            .map(|t| NodeRecord {
                id: t,
                parent: d.parent[t],
                alpha: d.alpha[t].iter().copied().collect(),
                beta: d.beta[t].iter().copied().collect(),
            })
            .collect();
        DecompositionRecord { root: d.root, nodes }
    }
}

impl DecompositionRecord {
    /// Converts to a rooted decomposition, checking that ids are dense and the root is its own parent.
    pub fn into_decomposition(self, source: &str) -> CliResult<RootedDecomposition> {
        let fail = |message: String| CliError::Decomposition {
            path: source.to_string(),
            message,
        };
        let k = self.nodes.len();
        if k == 0 {
            return Err(fail("no nodes".into()));
        }
        let mut slots: Vec<Option<NodeRecord>> = vec![None; k];
        for node in self.nodes {
            let id = node.id;
            if id >= k {
                return Err(fail(format!("node id {id} is not below the node count {k}")));
            }
            if slots[id].is_some() {
                return Err(fail(format!("node id {id} appears twice")));
            }
            if node.parent >= k {
                return Err(fail(format!("node {id} has unknown parent {}", node.parent)));
            }
            slots[id] = Some(node);
        }
        if self.root >= k {
            return Err(fail(format!("root {} is not a node", self.root)));
        }
        let nodes: Vec<NodeRecord> = slots.into_iter().map(|n| n.expect("ids are dense")).collect();
        if nodes[self.root].parent != self.root {
            return Err(fail("the root's parent must be the root itself".into()));
        }
        let to_set = |vs: &[Vertex]| vs.iter().copied().collect::<VertexSet>();
        Ok(RootedDecomposition {
            parent: nodes.iter().map(|n| n.parent).collect(),
            root: self.root,
            alpha: nodes.iter().map(|n| to_set(&n.alpha)).collect(),
            beta: nodes.iter().map(|n| to_set(&n.beta)).collect(),
        })
    }
}

pub fn parse_decomposition(text: &str, source: &str) -> CliResult<RootedDecomposition> {
    let record: DecompositionRecord = serde_json::from_str(text).map_err(|e| CliError::Decomposition {
        path: source.to_string(),
        message: e.to_string(),
    })?;
    record.into_decomposition(source)
}

pub fn write_decomposition(d: &RootedDecomposition) -> String {
    let mut text = serde_json::to_string_pretty(&DecompositionRecord::from(d)).expect("plain data serializes");
    text.push('\n');
    text
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_graph(path: &Path) -> CliResult<Graph> {
    parse_graph(&read(path)?, &path.display().to_string())
}

pub fn read_decomposition(path: &Path) -> CliResult<RootedDecomposition> {
    parse_decomposition(&read(path)?, &path.display().to_string())
}
