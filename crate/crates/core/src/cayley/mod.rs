//! Cayley (di)graphs `Cay(G, S)` with arcs `(g, s g)`.
//!
//! Vertex `v` is the group element with index `v`. Under this convention the
//! right translations `x -> x h` are automorphisms.

mod formats;

pub use formats::{decode_graph6, encode_graph6, parse_dot, CayleyJson, ExportFormat, FormatError};

use thiserror::Error;

use crate::graph::Graph;
use crate::pgroup::{is_symmetric, normalize_set, GroupDescriptor, GroupElement, GroupError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CayleyError {
    #[error("the identity is not allowed in a connection set")]
    IdentityInSet,
    #[error("connection set is not closed under inverses (missing inverse of {0})")]
    NotSymmetric(String),
    #[error("element {0} does not belong to {1}")]
    WrongGroup(String, GroupDescriptor),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Clone)]
pub struct CayleyGraph {
    desc: GroupDescriptor,
    connection_set: Vec<GroupElement>,
    graph: Graph,
}

impl CayleyGraph {
    pub fn descriptor(&self) -> GroupDescriptor {
        self.desc
    }

    /// Connection set, sorted by element index.
    pub fn connection_set(&self) -> &[GroupElement] {
        &self.connection_set
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn is_directed(&self) -> bool {
        self.graph.is_directed()
    }

    pub fn is_connected(&self) -> bool {
        self.graph.is_connected()
    }

    pub fn vertex(&self, g: &GroupElement) -> usize {
        g.index()
    }

    pub fn element(&self, v: usize) -> GroupElement {
        self.desc.from_index(v)
    }

    /// Right translation `x -> x h` as a vertex permutation.
    pub fn right_translation(&self, h: &GroupElement) -> Vec<u32> {
        self.desc.elements().map(|x| (x * *h).index() as u32).collect()
    }

    pub fn export(&self, format: ExportFormat) -> Result<String, CayleyError> {
        Ok(formats::export(self, format)?)
    }

    pub fn to_json(&self) -> CayleyJson {
        CayleyJson {
            group: self.desc.kind,
            p: self.desc.p,
            connection_set: self.connection_set.iter().map(|g| g.to_string()).collect(),
            directed: self.is_directed(),
        }
    }

    pub fn from_json(text: &str) -> Result<CayleyGraph, CayleyError> {
        let spec: CayleyJson = serde_json::from_str(text).map_err(|e| FormatError::Json(e.to_string()))?;
        let desc = GroupDescriptor::new(spec.group, spec.p)?;
        let set = spec
            .connection_set
            .iter()
            .map(|w| desc.parse_element(w))
            .collect::<Result<Vec<_>, _>>()?;
        if spec.directed {
            build_digraph(desc, &set)
        } else {
            build_graph(desc, &set)
        }
    }
}

fn check_members(desc: GroupDescriptor, set: &[GroupElement]) -> Result<Vec<GroupElement>, CayleyError> {
    if let Some(g) = set.iter().find(|g| g.descriptor() != desc) {
        return Err(CayleyError::WrongGroup(g.to_string(), desc));
    }
    let set = normalize_set(set);
    if set.iter().any(|g| g.is_identity()) {
        return Err(CayleyError::IdentityInSet);
    }
    Ok(set)
}

fn build(desc: GroupDescriptor, set: Vec<GroupElement>, directed: bool) -> CayleyGraph {
    let lists: Vec<Vec<u32>> = desc
        .elements()
        .map(|g| set.iter().map(|s| (*s * g).index() as u32).collect())
        .collect();
    CayleyGraph {
        desc,
        connection_set: set,
        graph: Graph::from_adjacency(lists, directed),
    }
}

/// Undirected `Cay(G, S)`; requires `1 ∉ S` and `S = S^-1`.
pub fn build_graph(desc: GroupDescriptor, set: &[GroupElement]) -> Result<CayleyGraph, CayleyError> {
    let set = check_members(desc, set)?;
    if !is_symmetric(&set) {
        let missing = set
            .iter()
            .find(|g| !set.contains(&g.inverse()))
            .expect("asymmetric set has an element without inverse");
        return Err(CayleyError::NotSymmetric(missing.to_string()));
    }
    Ok(build(desc, set, false))
}

/// Cayley digraph with arcs `(g, r g)` for `r` in `R`; requires `1 ∉ R`.
pub fn build_digraph(desc: GroupDescriptor, set: &[GroupElement]) -> Result<CayleyGraph, CayleyError> {
    let set = check_members(desc, set)?;
    Ok(build(desc, set, true))
}
