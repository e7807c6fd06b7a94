//! Automorphism groups of (di)graphs by partition refinement and backtracking.
//!
//! Trace dump format (debugging only, not stable): one line per first-path
//! node (`path depth=.. target_size=.. individualize=.. cells=..`), one per
//! generator found (`generator level=.. maps b->w`), one per finished level
//! (`level=.. base=.. orbit=..`) and a closing `order=.. nodes=.. leaves=..`.

mod partition;
mod perm;
mod search;

pub use partition::{refine, Partition};
pub use perm::{compose, identity, inverse, is_permutation, Perm, PermGroup, StabChain};

use thiserror::Error;

use crate::graph::Graph;
use perm::UnionFind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphAutoError {
    #[error("group of degree {degree} does not act on {domain} of a graph with {n} vertices")]
    DomainMismatch { degree: usize, n: usize, domain: Domain },
    #[error("partition does not cover the {0} vertices of the graph")]
    BadPartition(usize),
    #[error("isomorphism test needs connected graphs")]
    Disconnected,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Domain {
    Vertices,
    Edges,
    Arcs,
}

impl std::fmt::Display for Domain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Domain::Vertices => "vertices",
            Domain::Edges => "edges",
            Domain::Arcs => "arcs",
        })
    }
}

/// Search counters, for diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchSummary {
    pub nodes: u64,
    pub leaves: u64,
}

fn run(graph: &Graph, initial: Partition, trace: bool) -> (PermGroup, SearchSummary, Option<String>) {
    let (group, stats, log) = search::Search::new(graph, initial, trace).run();
    debug_assert!(group.generators().iter().all(|g| graph.is_automorphism(g)));
    (
        group,
        SearchSummary {
            nodes: stats.nodes,
            leaves: stats.leaves,
        },
        log,
    )
}

/// `Aut(graph)`; arc directions are respected for digraphs.
pub fn automorphism_group(graph: &Graph) -> PermGroup {
    run(graph, Partition::unit(graph.n()), false).0
}

/// Automorphisms preserving every cell of `colors` (as a set).
pub fn automorphism_group_colored(graph: &Graph, colors: &Partition) -> Result<PermGroup, GraphAutoError> {
    if colors.n() != graph.n() {
        return Err(GraphAutoError::BadPartition(graph.n()));
    }
    Ok(run(graph, colors.clone(), false).0)
}

/// `Aut(graph)` together with search counters and a text dump of the search.
pub fn automorphism_group_traced(graph: &Graph) -> (PermGroup, SearchSummary, String) {
    let (g, s, log) = run(graph, Partition::unit(graph.n()), true);
    (g, s, log.unwrap_or_default())
}

fn check_domain(group: &PermGroup, graph: &Graph, domain: Domain) -> Result<(), GraphAutoError> {
    let ok = group.degree() == graph.n()
        && !(domain == Domain::Edges && graph.is_directed())
        && group.generators().iter().all(|g| graph.is_automorphism(g));
    if ok {
        Ok(())
    } else {
        Err(GraphAutoError::DomainMismatch {
            degree: group.degree(),
            n: graph.n(),
            domain,
        })
    }
}

/// Orbits of `group` on the vertices, edges or arcs of `graph`.
///
/// Vertices are numbered as in the graph, arcs by [`Graph::arc_id`], and an
/// edge by the smaller arc id of its two arcs. Each orbit is sorted and the
/// orbits are ordered by least element. `Edges` is only defined for
/// undirected graphs.
pub fn orbits(group: &PermGroup, graph: &Graph, domain: Domain) -> Result<Vec<Vec<u32>>, GraphAutoError> {
    check_domain(group, graph, domain)?;
    if domain == Domain::Vertices {
        return Ok(group.orbits());
    }
    let m = graph.arc_count();
    let mut uf = UnionFind::new(m);
    let arcs: Vec<(u32, u32)> = graph.arcs().collect();
    for g in group.generators() {
        for (id, &(u, v)) in arcs.iter().enumerate() {
            let image = graph
                .arc_id(g[u as usize] as usize, g[v as usize] as usize)
                .expect("generator is an automorphism");
            uf.union(id, image);
        }
    }
    if domain == Domain::Edges {
        for (id, &(u, v)) in arcs.iter().enumerate() {
            uf.union(id, graph.arc_id(v as usize, u as usize).expect("undirected"));
        }
        // keep one arc (the lower id) per edge
        let lower: Vec<bool> = arcs
            .iter()
            .enumerate()
            .map(|(id, &(u, v))| id < graph.arc_id(v as usize, u as usize).unwrap())
            .collect();
        return Ok(uf
            .classes()
            .into_iter()
            .map(|c| c.into_iter().filter(|&a| lower[a as usize]).collect())
            .collect());
    }
    Ok(uf.classes())
}

/// Orbit sizes, in the order returned by [`orbits`].
pub fn orbit_sizes(group: &PermGroup, graph: &Graph, domain: Domain) -> Result<Vec<usize>, GraphAutoError> {
    Ok(orbits(group, graph, domain)?.iter().map(Vec::len).collect())
}

/// An isomorphism `first -> second` (as an image array), found through
/// `Aut(first ⊔ second)`. Both graphs must be connected.
pub fn isomorphism(first: &Graph, second: &Graph) -> Result<Option<Perm>, GraphAutoError> {
    if !first.is_connected() || !second.is_connected() {
        return Err(GraphAutoError::Disconnected);
    }
    let n = first.n();
    if n != second.n() || first.is_directed() != second.is_directed() || first.arc_count() != second.arc_count() {
        return Ok(None);
    }
    if n == 0 {
        return Ok(Some(vec![]));
    }
    let union = first.disjoint_union(second);
    let group = automorphism_group(&union);
    // walk the generator graph from vertex 0 to the second copy
    let total = 2 * n;
    let mut word: Vec<Option<(u32, usize)>> = vec![None; total];
    let mut seen = vec![false; total];
    seen[0] = true;
    let mut queue = std::collections::VecDeque::from([0u32]);
    let mut hit = None;
    'bfs: while let Some(x) = queue.pop_front() {
        for (gi, g) in group.generators().iter().enumerate() {
            let y = g[x as usize];
            if !seen[y as usize] {
                seen[y as usize] = true;
                word[y as usize] = Some((x, gi));
                if y as usize >= n {
                    hit = Some(y);
                    break 'bfs;
                }
                queue.push_back(y);
            }
        }
    }
    let Some(mut y) = hit else { return Ok(None) };
    let mut gens = vec![];
    while let Some((x, gi)) = word[y as usize] {
        gens.push(gi);
        y = x;
    }
    let mut perm = identity(total);
    for &gi in gens.iter().rev() {
        perm = compose(&perm, &group.generators()[gi]);
    }
    let iso: Perm = perm[..n].iter().map(|&v| v - n as u32).collect();
    debug_assert!((0..n).all(|u| second.neighbors(iso[u] as usize).len() == first.neighbors(u).len()));
    Ok(Some(iso))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: u32) -> Graph {
        let e: Vec<(u32, u32)> = (0..n).map(|x| (x, (x + 1) % n)).collect();
        Graph::from_edges(n as usize, &e, false)
    }

    #[test]
    fn cycle_orders() {
        for n in 3..=9 {
            assert_eq!(automorphism_group(&cycle(n)).order(), 2 * n as u128);
        }
        let c5 = cycle(5);
        let a = automorphism_group(&c5);
        assert_eq!(orbit_sizes(&a, &c5, Domain::Arcs).unwrap(), vec![10]);
        assert_eq!(orbit_sizes(&a, &c5, Domain::Edges).unwrap(), vec![5]);
    }

    #[test]
    fn directed_cycle_is_cyclic() {
        let e: Vec<(u32, u32)> = (0..6).map(|x| (x, (x + 1) % 6)).collect();
        let d = Graph::from_edges(6, &e, true);
        let a = automorphism_group(&d);
        assert_eq!(a.order(), 6);
        assert!(matches!(
            orbits(&a, &d, Domain::Edges),
            Err(GraphAutoError::DomainMismatch { .. })
        ));
    }

    #[test]
    fn complete_and_petersen() {
        let mut e = vec![];
        for i in 0..6 {
            for j in i + 1..6 {
                e.push((i, j));
            }
        }
        assert_eq!(automorphism_group(&Graph::from_edges(6, &e, false)).order(), 720);
        let mut p = vec![];
        for i in 0..5u32 {
            p.push((i, (i + 1) % 5));
            p.push((i, i + 5));
            p.push((i + 5, (i + 2) % 5 + 5));
        }
        let petersen = Graph::from_edges(10, &p, false);
        let a = automorphism_group(&petersen);
        assert_eq!(a.order(), 120);
        assert_eq!(a.chain().order(), 120);
    }

    #[test]
    fn star_and_mismatch() {
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)], false);
        let a = automorphism_group(&star);
        assert_eq!(a.order(), 6);
        assert_eq!(orbit_sizes(&a, &star, Domain::Vertices).unwrap(), vec![1, 3]);
        let c5 = cycle(5);
        assert!(orbits(&a, &c5, Domain::Vertices).is_err());
    }

    #[test]
    fn isomorphism_witness() {
        let c6 = cycle(6);
        let relabel = [3u32, 5, 0, 2, 4, 1];
        let e: Vec<(u32, u32)> = (0..6).map(|x| (relabel[x], relabel[(x + 1) % 6])).collect();
        let other = Graph::from_edges(6, &e, false);
        let iso = isomorphism(&c6, &other).unwrap().unwrap();
        for (u, v) in c6.arcs() {
            assert!(other.has_arc(iso[u as usize] as usize, iso[v as usize] as usize));
        }
        let k33 = Graph::from_edges(
            6,
            &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)],
            false,
        );
        let prism = Graph::from_edges(
            6,
            &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)],
            false,
        );
        assert_eq!(isomorphism(&k33, &prism).unwrap(), None);
        assert_eq!(isomorphism(&c6, &cycle(5)).unwrap(), None);
    }

    #[test]
    fn trace_dump_mentions_order() {
        let (g, s, log) = automorphism_group_traced(&cycle(7));
        assert_eq!(g.order(), 14);
        assert!(s.nodes >= 2);
        assert!(log.ends_with(&format!("order=14 nodes={} leaves={}\n", s.nodes, s.leaves)));
    }
}
