//! Ordered vertex partitions and equitable refinement.
//!
//! Cells are contiguous ranges of `lab` and are named by their start
//! position. Every refinement step depends only on positions and neighbor
//! counts, never on vertex labels, so the sequence of splits (the trace) is
//! an isomorphism invariant of the (graph, partition) pair.

use std::collections::VecDeque;

use crate::graph::Graph;

const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

#[inline]
fn mix(h: u64, x: u64) -> u64 {
    (h ^ x).wrapping_mul(FNV_PRIME).rotate_left(17)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    lab: Vec<u32>,
    pos: Vec<u32>,
    /// `cell[v]` is the start of the cell containing vertex `v`.
    cell: Vec<u32>,
    /// `end[s]` is one past the end of the cell starting at `s` (valid at starts only).
    end: Vec<u32>,
    num_cells: usize,
}

/// Scratch buffers reused across refinements.
#[derive(Debug, Default)]
pub(crate) struct Workspace {
    key: Vec<u64>,
    touched: Vec<u32>,
    touched_cells: Vec<u32>,
    splitter: Vec<u32>,
    in_queue: Vec<bool>,
    queue: VecDeque<u32>,
    scratch: Vec<(u64, u32)>,
}

impl Workspace {
    pub(crate) fn new(n: usize) -> Self {
        Workspace {
            key: vec![0; n],
            in_queue: vec![false; n],
            ..Default::default()
        }
    }
}

impl Partition {
    /// The one-cell partition of `0..n`.
    pub fn unit(n: usize) -> Partition {
        let mut end = vec![0; n.max(1)];
        end[0] = n as u32;
        Partition {
            lab: (0..n as u32).collect(),
            pos: (0..n as u32).collect(),
            cell: vec![0; n],
            end,
            num_cells: usize::from(n > 0),
        }
    }

    /// Partition with the given ordered cells; `None` if they do not cover
    /// `0..n` exactly once or a cell is empty.
    pub fn from_cells(n: usize, cells: &[Vec<u32>]) -> Option<Partition> {
        let mut lab = Vec::with_capacity(n);
        let mut cell = vec![u32::MAX; n];
        let mut end = vec![0; n.max(1)];
        for c in cells {
            if c.is_empty() {
                return None;
            }
            let start = lab.len() as u32;
            for &v in c {
                if v as usize >= n || cell[v as usize] != u32::MAX {
                    return None;
                }
                cell[v as usize] = start;
                lab.push(v);
            }
            end[start as usize] = lab.len() as u32;
        }
        if lab.len() != n {
            return None;
        }
        let mut pos = vec![0; n];
        for (x, &v) in lab.iter().enumerate() {
            pos[v as usize] = x as u32;
        }
        Some(Partition {
            lab,
            pos,
            cell,
            end,
            num_cells: cells.len(),
        })
    }

    pub fn n(&self) -> usize {
        self.lab.len()
    }

    pub fn num_cells(&self) -> usize {
        self.num_cells
    }

    pub fn is_discrete(&self) -> bool {
        self.num_cells == self.lab.len()
    }

    /// Vertices in position order.
    pub fn lab(&self) -> &[u32] {
        &self.lab
    }

    pub fn cell_starts(&self) -> impl Iterator<Item = u32> + '_ {
        let n = self.lab.len() as u32;
        std::iter::successors((n > 0).then_some(0u32), move |&s| {
            let e = self.end[s as usize];
            (e < n).then_some(e)
        })
    }

    pub fn cell_members(&self, start: u32) -> &[u32] {
        &self.lab[start as usize..self.end[start as usize] as usize]
    }

    pub fn cell_of(&self, v: u32) -> u32 {
        self.cell[v as usize]
    }

    /// Cells as sorted vertex lists, in position order.
    pub fn cells(&self) -> Vec<Vec<u32>> {
        self.cell_starts()
            .map(|s| {
                let mut c = self.cell_members(s).to_vec();
                c.sort_unstable();
                c
            })
            .collect()
    }

    pub fn cell_sizes(&self) -> Vec<usize> {
        self.cell_starts().map(|s| self.cell_members(s).len()).collect()
    }

    /// Smallest non-singleton cell, ties broken by position.
    pub fn target_cell(&self) -> Option<u32> {
        self.cell_starts()
            .filter(|&s| self.end[s as usize] - s > 1)
            .min_by_key(|&s| (self.end[s as usize] - s, s))
    }

    /// Every vertex of a cell has the same number of (out- and in-) neighbors
    /// in every cell.
    pub fn is_equitable(&self, graph: &Graph) -> bool {
        let n = self.n();
        let profile = |v: usize| -> Vec<(u32, u32, u32)> {
            let mut counts: Vec<(u32, u32, u32)> = vec![];
            let mut tally = std::collections::BTreeMap::<u32, (u32, u32)>::new();
            for &x in graph.neighbors(v) {
                tally.entry(self.cell[x as usize]).or_default().0 += 1;
            }
            if graph.is_directed() {
                for &x in graph.in_neighbors(v) {
                    tally.entry(self.cell[x as usize]).or_default().1 += 1;
                }
            }
            for (c, (o, i)) in tally {
                counts.push((c, o, i));
            }
            counts
        };
        let profiles: Vec<_> = (0..n).map(profile).collect();
        self.cell_starts().all(|s| {
            let m = self.cell_members(s);
            m.iter().all(|&v| profiles[v as usize] == profiles[m[0] as usize])
        })
    }

    /// Split `{v}` off the front of its cell. Returns the start of the new
    /// singleton cell.
    pub(crate) fn individualize(&mut self, v: u32) -> u32 {
        let s = self.cell[v as usize];
        let e = self.end[s as usize];
        if e - s == 1 {
            return s;
        }
        let pv = self.pos[v as usize];
        let first = self.lab[s as usize];
        self.lab.swap(s as usize, pv as usize);
        self.pos[first as usize] = pv;
        self.pos[v as usize] = s;
        self.end[s as usize] = s + 1;
        self.end[s as usize + 1] = e;
        for x in s + 1..e {
            self.cell[self.lab[x as usize] as usize] = s + 1;
        }
        self.num_cells += 1;
        s
    }

    /// Refine to the coarsest equitable partition finer than `self`, starting
    /// from the given splitter cells. Returns a hash of the split sequence.
    pub(crate) fn refine_from(&mut self, graph: &Graph, splitters: &[u32], ws: &mut Workspace) -> u64 {
        let n = self.n();
        let directed = graph.is_directed();
        let mut trace: u64 = 0xcbf2_9ce4_8422_2325;
        ws.queue.clear();
        for &s in splitters {
            if !ws.in_queue[s as usize] {
                ws.in_queue[s as usize] = true;
                ws.queue.push_back(s);
            }
        }
        while let Some(w) = ws.queue.pop_front() {
            ws.in_queue[w as usize] = false;
            if self.num_cells == n {
                continue;
            }
            ws.splitter.clear();
            ws.splitter.extend_from_slice(self.cell_members(w));
            ws.touched.clear();
            for &x in &ws.splitter {
                for &y in graph.in_neighbors(x as usize) {
                    if ws.key[y as usize] == 0 {
                        ws.touched.push(y);
                    }
                    ws.key[y as usize] += 1 << 32;
                }
                if directed {
                    for &y in graph.neighbors(x as usize) {
                        if ws.key[y as usize] == 0 {
                            ws.touched.push(y);
                        }
                        ws.key[y as usize] += 1;
                    }
                }
            }
            ws.touched_cells.clear();
            ws.touched_cells
                .extend(ws.touched.iter().map(|&y| self.cell[y as usize]));
            ws.touched_cells.sort_unstable();
            ws.touched_cells.dedup();
            trace = mix(trace, w as u64);
            for ci in 0..ws.touched_cells.len() {
                let s = ws.touched_cells[ci];
                self.split_cell(s, &mut trace, ws);
            }
            for &y in &ws.touched {
                ws.key[y as usize] = 0;
            }
        }
        mix(trace, self.num_cells as u64)
    }

    fn split_cell(&mut self, s: u32, trace: &mut u64, ws: &mut Workspace) {
        let e = self.end[s as usize];
        if e - s == 1 {
            return;
        }
        ws.scratch.clear();
        ws.scratch.extend(
            self.lab[s as usize..e as usize]
                .iter()
                .map(|&v| (ws.key[v as usize], v)),
        );
        let k0 = ws.scratch[0].0;
        if ws.scratch.iter().all(|&(k, _)| k == k0) {
            return;
        }
        ws.scratch.sort_unstable();
        let mut frag_start = s;
        let mut best = (0u32, s);
        let mut starts = vec![];
        for x in 0..ws.scratch.len() {
            let (k, v) = ws.scratch[x];
            let at = s + x as u32;
            self.lab[at as usize] = v;
            self.pos[v as usize] = at;
            if x > 0 && k != ws.scratch[x - 1].0 {
                self.close_fragment(frag_start, at, &mut best, &mut starts, trace, ws.scratch[x - 1].0);
                frag_start = at;
            }
        }
        let last_key = ws.scratch[ws.scratch.len() - 1].0;
        self.close_fragment(frag_start, e, &mut best, &mut starts, trace, last_key);
        self.num_cells += starts.len() - 1;
        let was_queued = ws.in_queue[s as usize];
        for &f in &starts {
            if ((was_queued && f != s) || (!was_queued && f != best.1)) && !ws.in_queue[f as usize] {
                ws.in_queue[f as usize] = true;
                ws.queue.push_back(f);
            }
        }
    }

    fn close_fragment(
        &mut self,
        start: u32,
        end: u32,
        best: &mut (u32, u32),
        starts: &mut Vec<u32>,
        trace: &mut u64,
        key: u64,
    ) {
        self.end[start as usize] = end;
        for x in start..end {
            self.cell[self.lab[x as usize] as usize] = start;
        }
        if end - start > best.0 {
            *best = (end - start, start);
        }
        starts.push(start);
        *trace = mix(mix(mix(*trace, start as u64), (end - start) as u64), key);
    }
}

/// Coarsest equitable partition refining `partition`.
pub fn refine(graph: &Graph, partition: &Partition) -> Partition {
    let mut p = partition.clone();
    let mut ws = Workspace::new(graph.n());
    let starts: Vec<u32> = p.cell_starts().collect();
    p.refine_from(graph, &starts, &mut ws);
    p
}
