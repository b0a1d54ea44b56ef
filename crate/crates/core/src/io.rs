//! JSON interchange for graphs, maps and computed witnesses.
//!
//! ```json
//! {"vertices": ["a", "b"], "edges": [["a", "b"], ["b", "b"]]}
//! ```
//!
//! A map document has `domain` and `codomain` (each an inline graph or a
//! path to a graph document) and an `assignment` object.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{FoldSequence, Graph, GraphMap};
use crate::homotopy::Homotopy;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
}

impl GraphDoc {
    pub fn into_graph(self) -> Result<Graph> {
        let mut seen = std::collections::HashSet::new();
        for v in &self.vertices {
            if !seen.insert(v) {
                return Err(Error::parse("vertices", format!("duplicate vertex `{v}`")));
            }
        }
        Graph::new(self.vertices, self.edges.into_iter().map(|[a, b]| (a, b)))
    }
}

impl From<&Graph> for GraphDoc {
    fn from(g: &Graph) -> Self {
        Self {
            vertices: g.labels().to_vec(),
            edges: g
                .labeled_edges()
                .into_iter()
                .map(|(a, b)| [a.to_owned(), b.to_owned()])
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GraphRef {
    Inline(GraphDoc),
    File(String),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDoc {
    pub domain: GraphRef,
    pub codomain: GraphRef,
    pub assignment: BTreeMap<String, String>,
}

fn json_error(what: &str, e: serde_json::Error) -> Error {
    Error::parse(what, e.to_string())
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let doc: GraphDoc = serde_json::from_str(text).map_err(|e| json_error("graph", e))?;
    doc.into_graph()
}

pub fn read_graph(path: &Path) -> Result<Graph> {
    parse_graph(&read(path, "graph")?)
}

fn read(path: &Path, field: &str) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::parse(field, format!("cannot read {}: {e}", path.display())))
}

fn resolve(r: GraphRef, field: &str, base: Option<&Path>) -> Result<Graph> {
    match r {
        GraphRef::Inline(doc) => doc
            .into_graph()
            .map_err(|e| Error::parse(field, e.to_string())),
        GraphRef::File(name) => {
            let path = match base {
                Some(dir) => dir.join(&name),
                None => PathBuf::from(&name),
            };
            read_graph(&path).map_err(|e| Error::parse(field, e.to_string()))
        }
    }
}

/// Parses a map document; graph file references resolve against `base`.
pub fn parse_map(text: &str, base: Option<&Path>) -> Result<GraphMap> {
    let doc: MapDoc = serde_json::from_str(text).map_err(|e| json_error("map", e))?;
    let domain = resolve(doc.domain, "domain", base)?;
    let codomain = resolve(doc.codomain, "codomain", base)?;
    for (k, v) in &doc.assignment {
        if domain.index_of(k).is_none() {
            return Err(Error::parse("assignment", format!("`{k}` is not a domain vertex")));
        }
        if codomain.index_of(v).is_none() {
            return Err(Error::parse("assignment", format!("`{v}` is not a codomain vertex")));
        }
    }
    GraphMap::new(domain, codomain, doc.assignment)
}

pub fn read_map(path: &Path) -> Result<GraphMap> {
    parse_map(&read(path, "map")?, path.parent())
}

pub fn graph_value(g: &Graph) -> Value {
    serde_json::to_value(GraphDoc::from(g)).expect("graph documents serialize")
}

pub fn map_value(f: &GraphMap) -> Value {
    json!({
        "domain": graph_value(f.domain()),
        "codomain": graph_value(f.codomain()),
        "assignment": f.assignment(),
    })
}

pub fn fold_sequence_value(seq: &FoldSequence) -> Value {
    json!({
        "start": graph_value(seq.start()),
        "end": graph_value(seq.end()),
        "steps": seq.steps().iter().map(|(v, w)| [v, w]).collect::<Vec<_>>(),
    })
}

pub fn homotopy_value(h: &Homotopy) -> Value {
    json!({
        "length": h.length(),
        "domain": graph_value(h.start().domain()),
        "codomain": graph_value(h.start().codomain()),
        "stages": h.stages().iter().map(GraphMap::assignment).collect::<Vec<_>>(),
    })
}

pub fn to_pretty(value: &Value) -> String {
    serde_json::to_string_pretty(value).expect("JSON values serialize")
}

/// Rebuilds a map from its serialized form, for round-trip checks.
pub fn map_from_value(value: &Value) -> Result<GraphMap> {
    parse_map(&value.to_string(), None)
}
