//! graph6, DOT and JSON encodings.
//!
//! graph6: size prefix `N(n)` followed by the upper triangle of the adjacency
//! matrix, column by column (`(0,1), (0,2), (1,2), (0,3), ...`), packed six
//! bits per byte with 63 added. `n <= 62` uses one byte, `n <= 258047` uses
//! `~` plus three bytes, larger `n` uses `~~` plus six bytes.
//!
//! DOT: `graph cayley {` (or `digraph`), one `v;` line per vertex, then one
//! `u -- v;` (`u -> v;`) line per edge (arc), sorted.
//!
//! JSON: `{"group": "G1|G2", "p": int, "connection_set": [words], "directed": bool}`.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::CayleyGraph;
use crate::graph::Graph;
use crate::pgroup::GroupKind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("format {0} does not support directed graphs")]
    UnsupportedFormat(&'static str),
    #[error("unknown export format {0:?} (expected graph6, dot or json)")]
    UnknownFormat(String),
    #[error("malformed graph6 input: {0}")]
    Graph6(String),
    #[error("malformed DOT input: {0}")]
    Dot(String),
    #[error("malformed JSON input: {0}")]
    Json(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Graph6,
    Dot,
    Json,
}

impl FromStr for ExportFormat {
    type Err = FormatError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "graph6" | "g6" => Ok(ExportFormat::Graph6),
            "dot" => Ok(ExportFormat::Dot),
            "json" => Ok(ExportFormat::Json),
            _ => Err(FormatError::UnknownFormat(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CayleyJson {
    pub group: GroupKind,
    pub p: u32,
    pub connection_set: Vec<String>,
    pub directed: bool,
}

pub(super) fn export(graph: &CayleyGraph, format: ExportFormat) -> Result<String, FormatError> {
    match format {
        ExportFormat::Graph6 => encode_graph6(graph.graph()),
        ExportFormat::Dot => Ok(encode_dot(graph.graph())),
        ExportFormat::Json => Ok(serde_json::to_string(&graph.to_json()).expect("serializable")),
    }
}

fn encode_size(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

pub fn encode_graph6(graph: &Graph) -> Result<String, FormatError> {
    if graph.is_directed() {
        return Err(FormatError::UnsupportedFormat("graph6"));
    }
    let n = graph.n();
    let mut out = Vec::with_capacity(8 + n * n / 12);
    encode_size(n, &mut out);
    let mut acc = 0u8;
    let mut nbits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | graph.has_arc(i, j) as u8;
            nbits += 1;
            if nbits == 6 {
                out.push(acc + 63);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push((acc << (6 - nbits)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 is ASCII"))
}

pub fn decode_graph6(text: &str) -> Result<Graph, FormatError> {
    let bytes = text
        .trim_end()
        .strip_prefix(">>graph6<<")
        .unwrap_or(text.trim_end())
        .as_bytes();
    let bad = |m: &str| FormatError::Graph6(m.to_string());
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(bad("byte outside 63..=126"));
    }
    let six = |b: &[u8]| b.iter().fold(0usize, |acc, &x| (acc << 6) | (x - 63) as usize);
    let (n, body) = match bytes {
        [] => return Err(bad("empty input")),
        [126, 126, rest @ ..] if rest.len() >= 6 => (six(&rest[..6]), &rest[6..]),
        [126, rest @ ..] if rest.len() >= 3 => (six(&rest[..3]), &rest[3..]),
        [126, ..] => return Err(bad("truncated size prefix")),
        [x, rest @ ..] => ((*x - 63) as usize, rest),
    };
    let bits = n * n.saturating_sub(1) / 2;
    if body.len() != bits.div_ceil(6) {
        return Err(bad(&format!(
            "expected {} data bytes for n = {n}, found {}",
            bits.div_ceil(6),
            body.len()
        )));
    }
    let mut edges = vec![];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((i as u32, j as u32));
            }
            k += 1;
        }
    }
    Ok(Graph::from_edges(n, &edges, false))
}

fn encode_dot(graph: &Graph) -> String {
    let (kw, arrow) = if graph.is_directed() {
        ("digraph", "->")
    } else {
        ("graph", "--")
    };
    let mut s = format!("{kw} cayley {{\n");
    for v in 0..graph.n() {
        writeln!(s, "  {v};").unwrap();
    }
    for (u, v) in graph.arcs() {
        if graph.is_directed() || u < v {
            writeln!(s, "  {u} {arrow} {v};").unwrap();
        }
    }
    s.push_str("}\n");
    s
}

/// Parse the DOT subset written by the exporter.
pub fn parse_dot(text: &str) -> Result<Graph, FormatError> {
    let bad = |m: String| FormatError::Dot(m);
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let header = lines.next().ok_or_else(|| bad("empty input".into()))?;
    let directed = if header.starts_with("digraph") {
        true
    } else if header.starts_with("graph") {
        false
    } else {
        return Err(bad(format!("bad header {header:?}")));
    };
    let arrow = if directed { "->" } else { "--" };
    let mut n = 0usize;
    let mut edges = vec![];
    let num = |t: &str| t.trim().parse::<u32>().map_err(|_| bad(format!("bad vertex {t:?}")));
    for line in lines {
        if line == "}" {
            break;
        }
        let stmt = line.trim_end_matches(';');
        if let Some((u, v)) = stmt.split_once(arrow) {
            let (u, v) = (num(u)?, num(v)?);
            n = n.max(u as usize + 1).max(v as usize + 1);
            edges.push((u, v));
        } else {
            n = n.max(num(stmt)? as usize + 1);
        }
    }
    Ok(Graph::from_edges(n, &edges, directed))
}
