//! Dense-index (di)graph in compressed sparse row form.

use std::collections::VecDeque;

/// A simple (di)graph on vertices `0..n`. Neighbor lists are sorted and
/// duplicate-free. For undirected graphs every edge is stored as two arcs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    directed: bool,
    out_off: Vec<u32>,
    out_adj: Vec<u32>,
    in_off: Vec<u32>,
    in_adj: Vec<u32>,
}

fn to_csr(lists: &[Vec<u32>]) -> (Vec<u32>, Vec<u32>) {
    let mut off = Vec::with_capacity(lists.len() + 1);
    let mut adj = Vec::with_capacity(lists.iter().map(|l| l.len()).sum());
    off.push(0);
    for l in lists {
        adj.extend_from_slice(l);
        off.push(adj.len() as u32);
    }
    (off, adj)
}

impl Graph {
    /// Build from out-neighbor lists. Loops are dropped and lists deduplicated;
    /// for undirected graphs the lists are symmetrized.
    pub fn from_adjacency(mut lists: Vec<Vec<u32>>, directed: bool) -> Graph {
        let n = lists.len();
        if !directed {
            let arcs: Vec<(u32, u32)> = lists
                .iter()
                .enumerate()
                .flat_map(|(u, l)| l.iter().map(move |&v| (u as u32, v)))
                .collect();
            for (u, v) in arcs {
                lists[v as usize].push(u);
            }
        }
        for (u, l) in lists.iter_mut().enumerate() {
            l.retain(|&v| v as usize != u);
            l.sort_unstable();
            l.dedup();
        }
        let (out_off, out_adj) = to_csr(&lists);
        let (in_off, in_adj) = if directed {
            let mut inl = vec![vec![]; n];
            for (u, l) in lists.iter().enumerate() {
                for &v in l {
                    inl[v as usize].push(u as u32);
                }
            }
            to_csr(&inl)
        } else {
            (vec![], vec![])
        };
        Graph {
            n,
            directed,
            out_off,
            out_adj,
            in_off,
            in_adj,
        }
    }

    pub fn from_edges(n: usize, edges: &[(u32, u32)], directed: bool) -> Graph {
        let mut lists = vec![vec![]; n];
        for &(u, v) in edges {
            lists[u as usize].push(v);
        }
        Graph::from_adjacency(lists, directed)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    /// Out-neighbors (all neighbors for undirected graphs).
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.out_adj[self.out_off[v] as usize..self.out_off[v + 1] as usize]
    }

    #[inline]
    pub fn in_neighbors(&self, v: usize) -> &[u32] {
        if self.directed {
            &self.in_adj[self.in_off[v] as usize..self.in_off[v + 1] as usize]
        } else {
            self.neighbors(v)
        }
    }

    #[inline]
    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&(v as u32)).is_ok()
    }

    /// Position of arc `(u, v)` in the global arc numbering, if present.
    pub fn arc_id(&self, u: usize, v: usize) -> Option<usize> {
        self.neighbors(u)
            .binary_search(&(v as u32))
            .ok()
            .map(|x| self.out_off[u] as usize + x)
    }

    /// All arcs `(u, v)` in arc-id order.
    pub fn arcs(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbors(u).iter().map(move |&v| (u as u32, v)))
    }

    pub fn arc_count(&self) -> usize {
        self.out_adj.len()
    }

    /// Undirected edges, or arcs for a digraph.
    pub fn edge_count(&self) -> usize {
        if self.directed {
            self.out_adj.len()
        } else {
            self.out_adj.len() / 2
        }
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.neighbors(v).len()
    }

    /// Common out-degree, if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = if self.n == 0 { 0 } else { self.out_degree(0) };
        let in_ok = !self.directed || (0..self.n).all(|v| self.in_neighbors(v).len() == d);
        ((0..self.n).all(|v| self.out_degree(v) == d) && in_ok).then_some(d)
    }

    /// Connected, ignoring arc directions.
    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &v in self.neighbors(u).iter().chain(self.in_neighbors(u)) {
                if !seen[v as usize] {
                    seen[v as usize] = true;
                    count += 1;
                    queue.push_back(v as usize);
                }
            }
        }
        count == self.n
    }

    /// `perm` (as an image array) maps arcs to arcs.
    pub fn is_automorphism(&self, perm: &[u32]) -> bool {
        if perm.len() != self.n {
            return false;
        }
        (0..self.n).all(|u| {
            let pu = perm[u] as usize;
            self.out_degree(u) == self.out_degree(pu)
                && self
                    .neighbors(u)
                    .iter()
                    .all(|&v| self.has_arc(pu, perm[v as usize] as usize))
        })
    }

    /// Digraph with every arc reversed.
    pub fn reversed(&self) -> Graph {
        let lists = (0..self.n).map(|v| self.in_neighbors(v).to_vec()).collect();
        Graph::from_adjacency(lists, self.directed)
    }

    /// Disjoint union, with `other` relabeled to `n..n+other.n`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n as u32;
        let mut lists: Vec<Vec<u32>> = (0..self.n).map(|v| self.neighbors(v).to_vec()).collect();
        lists.extend((0..other.n).map(|v| other.neighbors(v).iter().map(|&x| x + shift).collect()));
        Graph::from_adjacency(lists, self.directed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_basics() {
        let c5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)], false);
        assert_eq!(c5.edge_count(), 5);
        assert_eq!(c5.arc_count(), 10);
        assert_eq!(c5.regular_degree(), Some(2));
        assert!(c5.is_connected());
        assert!(c5.is_automorphism(&[1, 2, 3, 4, 0]));
        assert!(!c5.is_automorphism(&[1, 0, 2, 3, 4]));
        assert_eq!(c5.arc_id(4, 0), Some(8));
    }

    #[test]
    fn directed_reverse() {
        let d = Graph::from_edges(3, &[(0, 1), (1, 2)], true);
        assert!(d.has_arc(0, 1) && !d.has_arc(1, 0));
        let r = d.reversed();
        assert!(r.has_arc(1, 0) && r.has_arc(2, 1));
        assert!(d.is_connected());
        assert_eq!(d.regular_degree(), None);
    }
}
