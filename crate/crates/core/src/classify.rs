//! Transitivity profiles, the normal-Cayley-graph fast path, and brute-force
//! solvers for the congruence systems that constrain order-3 and order-4
//! automorphisms permuting a normalized connection set.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::autgroup::{aut_stabilizer, extend_automorphism, AutError, AutStabilizer};
use crate::cayley::{build_digraph, CayleyError, CayleyGraph};
use crate::graph::Graph;
use crate::graphauto::{automorphism_group, orbits, Domain, PermGroup};
use crate::modular::is_prime;
use crate::pgroup::{normalize_set, GroupDescriptor, GroupElement, MAX_PRIME};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("no normality certificate for this connection set (p divides |Aut(G,S)|)")]
    CertificateMissing,
    #[error("transitivity profiles are defined for undirected graphs")]
    Directed,
    #[error("p = {0} must be an odd prime <= {MAX_PRIME}")]
    BadPrime(u32),
    #[error(transparent)]
    Aut(#[from] AutError),
    #[error(transparent)]
    Cayley(#[from] CayleyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TransitivityClass {
    ArcTransitive,
    HalfArcTransitive,
    VertexButNotEdge,
    EdgeButNotVertex,
    Other,
}

impl std::fmt::Display for TransitivityClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            TransitivityClass::ArcTransitive => "arc-transitive",
            TransitivityClass::HalfArcTransitive => "half-arc-transitive",
            TransitivityClass::VertexButNotEdge => "vertex-but-not-edge-transitive",
            TransitivityClass::EdgeButNotVertex => "edge-but-not-vertex-transitive",
            TransitivityClass::Other => "other",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TransitivityProfile {
    pub vertex_orbits: usize,
    pub edge_orbits: usize,
    pub arc_orbits: usize,
    /// Common degree, `None` for non-regular graphs.
    pub valency: Option<usize>,
    pub class: TransitivityClass,
}

impl TransitivityProfile {
    pub fn from_counts(vertex_orbits: usize, edge_orbits: usize, arc_orbits: usize, valency: Option<usize>) -> Self {
        use TransitivityClass::*;
        let class = match (vertex_orbits, edge_orbits, arc_orbits) {
            (1, 1, 1) => ArcTransitive,
            (1, 1, 2) => HalfArcTransitive,
            (1, e, _) if e > 1 => VertexButNotEdge,
            (v, 1, _) if v > 1 && valency.is_some() => EdgeButNotVertex,
            _ => Other,
        };
        // vertex- and edge-transitive with odd valency forces arc-transitivity
        debug_assert!(!(class == HalfArcTransitive && valency.is_some_and(|d| d % 2 == 1)));
        TransitivityProfile {
            vertex_orbits,
            edge_orbits,
            arc_orbits,
            valency,
            class,
        }
    }

    pub fn triple(&self) -> (usize, usize, usize) {
        (self.vertex_orbits, self.edge_orbits, self.arc_orbits)
    }

    pub fn is_half_arc_transitive(&self) -> bool {
        self.class == TransitivityClass::HalfArcTransitive
    }
}

/// Profile of an undirected graph from its full automorphism group.
pub fn graph_profile(graph: &Graph) -> Result<(TransitivityProfile, PermGroup), ClassifyError> {
    if graph.is_directed() {
        return Err(ClassifyError::Directed);
    }
    let group = automorphism_group(graph);
    let count = |d| orbits(&group, graph, d).expect("group computed from this graph").len();
    let profile = TransitivityProfile::from_counts(
        count(Domain::Vertices),
        count(Domain::Edges),
        count(Domain::Arcs),
        graph.regular_degree(),
    );
    Ok((profile, group))
}

/// Graph-level oracle: orbit counts of `Aut(Γ)` on vertices, edges and arcs.
pub fn transitivity_profile(graph: &CayleyGraph) -> Result<TransitivityProfile, ClassifyError> {
    Ok(graph_profile(graph.graph())?.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Certificate {
    NormalByCertificate,
    NeedsOracle,
}

/// Out-valency from which a non-normal Cayley digraph with a `p'`-group
/// `Aut(G,S)` can occur on a group of order `p^3`; `None` if it cannot.
fn exceptional_valency(p: u32) -> Option<usize> {
    match p {
        5 => Some(24),
        7 => Some(48),
        11 => Some(120),
        _ => None,
    }
}

/// Certificate from a precomputed `|Aut(G,S)|`.
pub fn certificate_for(desc: GroupDescriptor, set_size: usize, aut_order: usize) -> Certificate {
    let p_prime = !aut_order.is_multiple_of(desc.p as usize);
    let below = exceptional_valency(desc.p).is_none_or(|bound| set_size < bound);
    if p_prime && below {
        Certificate::NormalByCertificate
    } else {
        Certificate::NeedsOracle
    }
}

pub fn normality_certificate(desc: GroupDescriptor, set: &[GroupElement]) -> Result<Certificate, ClassifyError> {
    let stab = aut_stabilizer(desc, set)?;
    Ok(certificate_for(desc, stab.base_set.len(), stab.order))
}

/// Profile of `Cay(G,S)` assuming it is normal, so that the vertex
/// stabilizer is exactly `Aut(G,S)`. `S` must generate `G`.
pub fn profile_from_stabilizer(stab: &AutStabilizer) -> TransitivityProfile {
    let set = &stab.base_set;
    let mut arc_seen = vec![false; set.len()];
    let mut edge_seen = vec![false; set.len()];
    let (mut arcs, mut edges) = (0, 0);
    let pos = |g: &GroupElement| set.binary_search_by_key(&g.index(), |t| t.index()).expect("closed set");
    for x in 0..set.len() {
        if !arc_seen[x] {
            arcs += 1;
            for alpha in stab.elements() {
                arc_seen[pos(&alpha.apply(&set[x]))] = true;
            }
        }
        if !edge_seen[x] {
            edges += 1;
            for alpha in stab.elements() {
                let y = alpha.apply(&set[x]);
                edge_seen[pos(&y)] = true;
                edge_seen[pos(&y.inverse())] = true;
            }
        }
    }
    TransitivityProfile::from_counts(1, edges, arcs, Some(set.len()))
}

/// Classification through `Aut(G,S)` alone; valid only under a normality certificate.
pub fn normal_path_classify(desc: GroupDescriptor, set: &[GroupElement]) -> Result<TransitivityProfile, ClassifyError> {
    let stab = aut_stabilizer(desc, set)?;
    if certificate_for(desc, stab.base_set.len(), stab.order) != Certificate::NormalByCertificate {
        return Err(ClassifyError::CertificateMissing);
    }
    Ok(profile_from_stabilizer(&stab))
}

/// The two oriented halves of a half-arc-transitive Cayley graph, as
/// `(Cay(G,R), Cay(G,R^-1))` where `R` is the arc orbit through `(1, s)` for
/// the first `s` of the connection set. `None` for any other graph.
pub fn extract_orientations(graph: &CayleyGraph) -> Option<(CayleyGraph, CayleyGraph)> {
    let (profile, group) = graph_profile(graph.graph()).ok()?;
    if !profile.is_half_arc_transitive() {
        return None;
    }
    let g = graph.graph();
    let arc_orbits = orbits(&group, g, Domain::Arcs).ok()?;
    let desc = graph.descriptor();
    let one = desc.identity().index();
    let first = g.arc_id(one, graph.connection_set()[0].index())?;
    let orbit = arc_orbits.iter().find(|o| o.binary_search(&(first as u32)).is_ok())?;
    let r: Vec<GroupElement> = graph
        .connection_set()
        .iter()
        .filter(|s| {
            let id = g.arc_id(one, s.index()).expect("arc at identity") as u32;
            orbit.binary_search(&id).is_ok()
        })
        .copied()
        .collect();
    let r_inv: Vec<GroupElement> = r.iter().map(GroupElement::inverse).collect();
    let forward = build_digraph(desc, &r).ok()?;
    let backward = build_digraph(desc, &r_inv).ok()?;
    debug_assert!(forward.graph().arcs().all(|(u, v)| {
        orbit
            .binary_search(&(g.arc_id(u as usize, v as usize).unwrap() as u32))
            .is_ok()
    }));
    Some((forward, backward))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EqSystem {
    /// Order-3 automorphism on `R = {a, b, a^i b^j c^k}` in `G2(p)`.
    V6,
    /// Klein four-group regular on a 4-element `R`.
    V8Klein,
    /// Order-4 automorphism cycling a 4-element `R`.
    V8Cyclic,
}

impl EqSystem {
    pub const ALL: [EqSystem; 3] = [EqSystem::V6, EqSystem::V8Klein, EqSystem::V8Cyclic];

    pub fn name(self) -> &'static str {
        match self {
            EqSystem::V6 => "v6",
            EqSystem::V8Klein => "v8_klein",
            EqSystem::V8Cyclic => "v8_cyclic",
        }
    }
}

impl std::str::FromStr for EqSystem {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        EqSystem::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| format!("unknown system {s:?} (expected v6, v8_klein or v8_cyclic)"))
    }
}

impl std::fmt::Display for EqSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EqSolutionSet {
    pub p: u32,
    pub system: EqSystem,
    /// `(i, j, k)` with entries in `0..p`, sorted.
    pub solutions: Vec<(u32, u32, u32)>,
}

/// Left-hand sides of the three congruences of `system` at `(i, j, k)`,
/// reduced into `0..p`. `h` is `2^-1 mod p`.
///
/// Each system is identified by its first two congruences; the third is kept
/// term for term in the written order.
pub fn congruences(system: EqSystem, p: i64, (i, j, k): (i64, i64, i64)) -> [i64; 3] {
    let h = (p + 1) / 2;
    let raw = match system {
        // ij = 1; i + j^2 = 0
        EqSystem::V6 => [i * j - 1, i + j * j, -i * i * j + k * (j - i) - h * i * j * j * (j - 1)],
        // i^2 + j^2 = 1; 2ij = 0
        EqSystem::V8Klein => [
            i * i + j * j - 1,
            2 * i * j,
            -i * j * j * j + k * (i * i - j * j + i - j)
                - i * j * j
                - h * i * i * j * (i - 1)
                - h * i * j * j * (j - 1),
        ],
        // i(i + j^2) = 1; j(2i + j^2) = 0
        EqSystem::V8Cyclic => [
            i * (i + j * j) - 1,
            j * (2 * i + j * j),
            i * i * i * j + (k - i * i * j) * (i + j * j) - i * k * (j - i) + h * i * i * j * j * (j - 1)
                - h * i * j * (i + j * j) * (i + j * j - 1),
        ],
    };
    raw.map(|x| x.rem_euclid(p))
}

pub fn check_prime(p: u32) -> Result<(), ClassifyError> {
    if !(3..=MAX_PRIME).contains(&p) || !is_prime(p as u64) {
        return Err(ClassifyError::BadPrime(p));
    }
    Ok(())
}

/// Every `(i, j, k)` in `Z_p^3` satisfying all three congruences.
pub fn solve_eqs(p: u32, system: EqSystem) -> Result<EqSolutionSet, ClassifyError> {
    check_prime(p)?;
    let q = p as i64;
    let solutions: Vec<(u32, u32, u32)> = (0..q)
        .into_par_iter()
        .flat_map_iter(|i| {
            (0..q).flat_map(move |j| {
                (0..q)
                    .filter(move |&k| congruences(system, q, (i, j, k)) == [0, 0, 0])
                    .map(move |k| (i as u32, j as u32, k as u32))
            })
        })
        .collect();
    Ok(EqSolutionSet { p, system, solutions })
}

/// `R = {a, a^α, a^{α^2}, a^{α^3}}` for the automorphism `α : a -> b,
/// b -> a^i b^j c^k` of `G2(p)`, or `None` if that assignment does not extend.
pub fn orbit_set_from_solution(p: u32, (i, j, k): (u32, u32, u32)) -> Option<Vec<GroupElement>> {
    let desc = GroupDescriptor::g2(p).ok()?;
    let alpha = extend_automorphism(desc, desc.b(), desc.element(i as i64, j as i64, k as i64)).ok()?;
    let mut r = vec![desc.a()];
    for _ in 0..3 {
        let next = alpha.apply(r.last().unwrap());
        r.push(next);
    }
    Some(normalize_set(&r))
}
