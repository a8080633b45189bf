//! File formats: graphs, extremal parameters, deletion lists and run reports.
//!
//! Graph files are JSON objects `{"version", "parts", "edges"}` where `parts`
//! lists the vertex ids of each part and `edges` lists id pairs. Ids may be any
//! distinct non-negative integers; loading relabels them densely in part
//! order, keeping the listed order inside each part. Saving always writes the
//! canonical form: dense ids, parts in index order, edges `u < v` sorted
//! lexicographically, one edge per line.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::extremal::{DeletionSpec, ExtremalParams};
use crate::graph::{GraphBuilder, MultipartiteGraph, Vertex};

pub const FORMAT_VERSION: &str = "1.0";
const SUPPORTED_MAJOR: &str = "1";

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    /// Defaults to the current version when absent from a file.
    #[serde(default = "current_version")]
    pub version: String,
    pub parts: Vec<Vec<u64>>,
    pub edges: Vec<[u64; 2]>,
}

impl GraphDocument {
    pub fn from_graph(g: &MultipartiteGraph) -> Self {
        GraphDocument {
            version: FORMAT_VERSION.to_string(),
            parts: (0..g.part_count())
                .map(|p| g.part_range(p).map(|v| v as u64).collect())
                .collect(),
            edges: g.edges().map(|(u, v)| [u as u64, v as u64]).collect(),
        }
    }

    pub fn to_graph(&self) -> Result<MultipartiteGraph> {
        check_version(&self.version)?;
        let ids = IdMap::new(&self.parts)?;
        let sizes: Vec<usize> = self.parts.iter().map(Vec::len).collect();
        let mut builder = GraphBuilder::new(&sizes)?;
        for (u, v) in ids.edges(&self.edges, Some(&builder))? {
            builder.insert_unchecked(u, v);
        }
        Ok(builder.build())
    }

    /// Canonical text: byte-identical for equal graphs.
    pub fn to_canonical_string(&self) -> String {
        let mut out = String::new();
        let _ = write!(
            out,
            "{{\n  \"version\": \"{}\",\n  \"parts\": [",
            self.version
        );
        for (i, part) in self.parts.iter().enumerate() {
            out.push_str(if i == 0 { "\n    " } else { ",\n    " });
            out.push_str(&compact_list(part));
        }
        out.push_str(if self.parts.is_empty() {
            "],\n"
        } else {
            "\n  ],\n"
        });
        out.push_str("  \"edges\": [");
        for (i, [u, v]) in self.edges.iter().enumerate() {
            out.push_str(if i == 0 { "\n    " } else { ",\n    " });
            let _ = write!(out, "[{u},{v}]");
        }
        out.push_str(if self.edges.is_empty() {
            "]\n}\n"
        } else {
            "\n  ]\n}\n"
        });
        out
    }
}

fn current_version() -> String {
    FORMAT_VERSION.to_string()
}

fn compact_list(ids: &[u64]) -> String {
    let items: Vec<String> = ids.iter().map(u64::to_string).collect();
    format!("[{}]", items.join(","))
}

fn check_version(version: &str) -> Result<()> {
    let major = version.split('.').next().unwrap_or("");
    if major != SUPPORTED_MAJOR {
        return Err(Error::Parse(format!(
            "unsupported format version {version:?} (this build reads {SUPPORTED_MAJOR}.x)"
        )));
    }
    Ok(())
}

/// Maps file ids to dense vertex ids.
struct IdMap {
    dense: HashMap<u64, Vertex>,
}

impl IdMap {
    fn new(parts: &[Vec<u64>]) -> Result<Self> {
        let mut dense = HashMap::new();
        for (p, part) in parts.iter().enumerate() {
            if part.is_empty() {
                return Err(Error::Parse(format!("parts[{p}] is empty")));
            }
            for &id in part {
                let next = dense.len();
                if dense.insert(id, next).is_some() {
                    return Err(Error::Parse(format!(
                        "vertex id {id} is listed twice (again in parts[{p}])"
                    )));
                }
            }
        }
        Ok(IdMap { dense })
    }

    /// Validated dense pairs `u < v`. With a builder, pairs inside one part
    /// are rejected.
    fn edges(
        &self,
        edges: &[[u64; 2]],
        builder: Option<&GraphBuilder>,
    ) -> Result<Vec<(Vertex, Vertex)>> {
        let mut seen = HashSet::new();
        let mut out = Vec::with_capacity(edges.len());
        for (i, &[a, b]) in edges.iter().enumerate() {
            let lookup = |id: u64| {
                self.dense
                    .get(&id)
                    .copied()
                    .ok_or_else(|| Error::Parse(format!("edges[{i}]: unknown vertex id {id}")))
            };
            let (u, v) = (lookup(a)?, lookup(b)?);
            if u == v {
                return Err(Error::Parse(format!("edges[{i}]: self-loop at {a}")));
            }
            if let Some(builder) = builder {
                let (pu, pv) = (builder.graph().part_of(u), builder.graph().part_of(v));
                if pu == pv {
                    return Err(Error::Parse(format!(
                        "edges[{i}]: [{a},{b}] joins two vertices of part {pu}"
                    )));
                }
            }
            let pair = (u.min(v), u.max(v));
            if !seen.insert(pair) {
                return Err(Error::Parse(format!(
                    "edges[{i}]: duplicate edge [{a},{b}]"
                )));
            }
            out.push(pair);
        }
        Ok(out)
    }
}

fn json_error(context: &str, e: serde_json::Error) -> Error {
    Error::Parse(format!(
        "{context}: line {}, column {}: {e}",
        e.line(),
        e.column()
    ))
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Writes `text` to `path`, creating missing parent directories.
pub fn write_text(path: &Path, text: &str) -> Result<()> {
    let io = |source| Error::Io {
        path: path.display().to_string(),
        source,
    };
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(io)?;
    }
    fs::write(path, text).map_err(io)
}

pub fn parse_graph(text: &str) -> Result<MultipartiteGraph> {
    let doc: GraphDocument = serde_json::from_str(text).map_err(|e| json_error("graph", e))?;
    doc.to_graph()
}

pub fn graph_to_string(g: &MultipartiteGraph) -> String {
    GraphDocument::from_graph(g).to_canonical_string()
}

pub fn load_graph(path: impl AsRef<Path>) -> Result<MultipartiteGraph> {
    let path = path.as_ref();
    parse_graph(&read_text(path)?).map_err(|e| locate(path, e))
}

pub fn save_graph(g: &MultipartiteGraph, path: impl AsRef<Path>) -> Result<()> {
    write_text(path.as_ref(), &graph_to_string(g))
}

fn locate(path: &Path, e: Error) -> Error {
    match e {
        Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
        other => other,
    }
}

pub fn parse_params(text: &str) -> Result<ExtremalParams> {
    serde_json::from_str(text).map_err(|e| json_error("params", e))
}

pub fn load_params(path: impl AsRef<Path>) -> Result<ExtremalParams> {
    let path = path.as_ref();
    parse_params(&read_text(path)?).map_err(|e| locate(path, e))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DeletionDocument {
    version: Option<String>,
    parts: Option<Vec<Vec<u64>>>,
    edges: Vec<[u64; 2]>,
}

/// Deletion lists use the graph format; `parts` and `version` are optional.
/// Without `parts`, ids are the dense ids of the generated graph.
pub fn parse_deletions(text: &str) -> Result<DeletionSpec> {
    let doc: DeletionDocument =
        serde_json::from_str(text).map_err(|e| json_error("deletions", e))?;
    if let Some(v) = &doc.version {
        check_version(v)?;
    }
    let pairs = match &doc.parts {
        Some(parts) => {
            let sizes: Vec<usize> = parts.iter().map(Vec::len).collect();
            let builder = GraphBuilder::new(&sizes)?;
            IdMap::new(parts)?.edges(&doc.edges, Some(&builder))?
        }
        None => {
            let mut seen = HashSet::new();
            let mut out = Vec::new();
            for (i, &[a, b]) in doc.edges.iter().enumerate() {
                if a == b {
                    return Err(Error::Parse(format!("edges[{i}]: self-loop at {a}")));
                }
                let pair = (a.min(b) as Vertex, a.max(b) as Vertex);
                if !seen.insert(pair) {
                    return Err(Error::Parse(format!(
                        "edges[{i}]: duplicate edge [{a},{b}]"
                    )));
                }
                out.push(pair);
            }
            out
        }
    };
    Ok(DeletionSpec::from_pairs(pairs))
}

pub fn load_deletions(path: impl AsRef<Path>) -> Result<DeletionSpec> {
    let path = path.as_ref();
    parse_deletions(&read_text(path)?).map_err(|e| locate(path, e))
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn file_digest(path: impl AsRef<Path>) -> Result<String> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(sha256_hex(&bytes))
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

/// Record of one command invocation. Inputs, seed and version determine the
/// outputs; `wall_ms` is the only field that varies between replays.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct RunReport {
    pub format_version: String,
    pub command: Vec<String>,
    pub inputs: Vec<InputDigest>,
    pub outputs: Vec<String>,
    /// Exact values as "p/q" strings, counts as integers, flags as booleans.
    pub summary: BTreeMap<String, serde_json::Value>,
    pub seed: Option<u64>,
    pub wall_ms: u64,
}

impl RunReport {
    pub fn new(command: Vec<String>) -> Self {
        RunReport {
            format_version: FORMAT_VERSION.to_string(),
            command,
            inputs: Vec::new(),
            outputs: Vec::new(),
            summary: BTreeMap::new(),
            seed: None,
            wall_ms: 0,
        }
    }

    pub fn add_input(&mut self, path: &Path) -> Result<()> {
        self.inputs.push(InputDigest {
            path: path.display().to_string(),
            sha256: file_digest(path)?,
        });
        Ok(())
    }

    pub fn summarize(&mut self, key: &str, value: impl Into<serde_json::Value>) {
        self.summary.insert(key.to_string(), value.into());
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// JSON without the wall-clock field.
    pub fn canonical_json(&self) -> String {
        let mut value = serde_json::to_value(self).expect("report serializes");
        value.as_object_mut().expect("object").remove("wall_ms");
        serde_json::to_string(&value).expect("value serializes")
    }
}
