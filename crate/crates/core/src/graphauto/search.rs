//! Individualization-refinement search for generators of `Aut(graph)`.
//!
//! Only automorphisms between the first leaf and other leaves are collected,
//! which is enough for a strong generating set relative to the first-path base.

use std::fmt::Write as _;

use super::partition::{Partition, Workspace};
use super::perm::{Perm, PermGroup, UnionFind};
use crate::graph::Graph;

pub(crate) struct SearchStats {
    pub nodes: u64,
    pub leaves: u64,
}

pub(crate) struct Search<'a> {
    graph: &'a Graph,
    ws: Workspace,
    /// partition at each depth of the first path
    path: Vec<Partition>,
    /// vertex individualized at each depth
    base: Vec<u32>,
    /// members of the target cell at each depth, ascending
    target: Vec<Vec<u32>>,
    target_start: Vec<u32>,
    /// trace of the refinement producing depth `l + 1`
    traces: Vec<u64>,
    leaf: Vec<u32>,
    gens: Vec<(Perm, usize)>,
    stats: SearchStats,
    log: Option<String>,
}

impl<'a> Search<'a> {
    pub(crate) fn new(graph: &'a Graph, initial: Partition, trace: bool) -> Self {
        let n = graph.n();
        let mut ws = Workspace::new(n);
        let mut p = initial;
        let starts: Vec<u32> = p.cell_starts().collect();
        p.refine_from(graph, &starts, &mut ws);
        Search {
            graph,
            ws,
            path: vec![p],
            base: vec![],
            target: vec![],
            target_start: vec![],
            traces: vec![],
            leaf: vec![],
            gens: vec![],
            stats: SearchStats { nodes: 1, leaves: 0 },
            log: trace.then(String::new),
        }
    }

    fn note(&mut self, f: impl FnOnce(&mut String)) {
        if let Some(log) = self.log.as_mut() {
            f(log);
        }
    }

    fn first_path(&mut self) {
        loop {
            let p = self.path.last().unwrap();
            let Some(t) = p.target_cell() else { break };
            let mut cell = p.cell_members(t).to_vec();
            cell.sort_unstable();
            let v = cell[0];
            let mut q = p.clone();
            let s = q.individualize(v);
            let tr = q.refine_from(self.graph, &[s], &mut self.ws);
            self.stats.nodes += 1;
            let depth = self.base.len();
            self.note(|log| {
                writeln!(
                    log,
                    "path depth={depth} target_size={} individualize={v} cells={}",
                    cell.len(),
                    q.num_cells()
                )
                .unwrap()
            });
            self.base.push(v);
            self.target.push(cell);
            self.target_start.push(t);
            self.traces.push(tr);
            self.path.push(q);
        }
        self.leaf = self.path.last().unwrap().lab().to_vec();
        self.stats.leaves += 1;
    }

    /// Look for an automorphism that maps the first-path node at `level`
    /// individualized at `base[level]` to the same node individualized at `w`.
    fn find_equivalent(&mut self, level: usize, w: u32) -> Option<Perm> {
        let mut q = self.path[level].clone();
        let s = q.individualize(w);
        let tr = q.refine_from(self.graph, &[s], &mut self.ws);
        self.stats.nodes += 1;
        if tr != self.traces[level] {
            return None;
        }
        self.descend(&q, level + 1)
    }

    fn descend(&mut self, p: &Partition, level: usize) -> Option<Perm> {
        if p.is_discrete() || level == self.base.len() {
            if !(p.is_discrete() && level == self.base.len()) {
                return None;
            }
            self.stats.leaves += 1;
            let mut perm = vec![0u32; self.leaf.len()];
            for (&x, &y) in self.leaf.iter().zip(p.lab()) {
                perm[x as usize] = y;
            }
            return self.graph.is_automorphism(&perm).then_some(perm);
        }
        let t = p.target_cell()?;
        if t != self.target_start[level] || p.cell_members(t).len() != self.target[level].len() {
            return None;
        }
        let mut cell = p.cell_members(t).to_vec();
        cell.sort_unstable();
        for v in cell {
            let mut q = p.clone();
            let s = q.individualize(v);
            let tr = q.refine_from(self.graph, &[s], &mut self.ws);
            self.stats.nodes += 1;
            if tr != self.traces[level] {
                continue;
            }
            if let Some(perm) = self.descend(&q, level + 1) {
                return Some(perm);
            }
        }
        None
    }

    fn level_orbits(&self, level: usize) -> UnionFind {
        let mut uf = UnionFind::new(self.graph.n());
        for (g, l) in &self.gens {
            if *l >= level {
                for (x, &y) in g.iter().enumerate() {
                    uf.union(x, y as usize);
                }
            }
        }
        uf
    }

    pub(crate) fn run(mut self) -> (PermGroup, SearchStats, Option<String>) {
        self.first_path();
        let depth = self.base.len();
        let mut orbit_sizes = vec![1usize; depth];
        for level in (0..depth).rev() {
            let b = self.base[level] as usize;
            let mut uf = self.level_orbits(level);
            let mut failed: Vec<u32> = vec![];
            let cell = self.target[level].clone();
            for &w in &cell {
                let rw = uf.find(w as usize);
                if rw == uf.find(b) || failed.iter().any(|&f| uf.find(f as usize) == rw) {
                    continue;
                }
                match self.find_equivalent(level, w) {
                    Some(g) => {
                        self.note(|log| writeln!(log, "generator level={level} maps {b}->{w}").unwrap());
                        for (x, &y) in g.iter().enumerate() {
                            uf.union(x, y as usize);
                        }
                        self.gens.push((g, level));
                    }
                    None => failed.push(w),
                }
            }
            let rb = uf.find(b);
            orbit_sizes[level] = cell.iter().filter(|&&x| uf.find(x as usize) == rb).count();
            let size = orbit_sizes[level];
            self.note(|log| writeln!(log, "level={level} base={b} orbit={size}").unwrap());
        }
        let n = self.graph.n();
        let generators = self.gens.into_iter().map(|(g, _)| g).collect();
        let group = PermGroup::from_strong(n, generators, self.base, orbit_sizes);
        if let Some(log) = self.log.as_mut() {
            writeln!(
                log,
                "order={} nodes={} leaves={}",
                group.order(),
                self.stats.nodes,
                self.stats.leaves
            )
            .unwrap();
        }
        (group, self.stats, self.log)
    }
}
