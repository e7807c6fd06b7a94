//! Permutation groups given by generators, with a lazily built stabilizer chain.
//!
//! Permutations are image arrays and act on the right: `x^g = g[x]`, and
//! `compose(g, h)` applies `g` first.

use std::sync::OnceLock;

pub type Perm = Vec<u32>;

pub fn identity(n: usize) -> Perm {
    (0..n as u32).collect()
}

pub fn is_identity(g: &[u32]) -> bool {
    g.iter().enumerate().all(|(x, &y)| x as u32 == y)
}

/// `g` then `h`.
pub fn compose(g: &[u32], h: &[u32]) -> Perm {
    g.iter().map(|&y| h[y as usize]).collect()
}

pub fn inverse(g: &[u32]) -> Perm {
    let mut inv = vec![0; g.len()];
    for (x, &y) in g.iter().enumerate() {
        inv[y as usize] = x as u32;
    }
    inv
}

pub fn is_permutation(g: &[u32]) -> bool {
    let mut seen = vec![false; g.len()];
    g.iter()
        .all(|&y| (y as usize) < g.len() && !std::mem::replace(&mut seen[y as usize], true))
}

#[derive(Debug, Clone)]
struct Level {
    /// `transversal[x]` maps the base point to `x`, for `x` in the basic orbit.
    transversal: Vec<Option<Perm>>,
    orbit: Vec<u32>,
}

/// Base and strong generating set with explicit transversals.
#[derive(Debug, Clone)]
pub struct StabChain {
    degree: usize,
    base: Vec<u32>,
    strong_gens: Vec<Perm>,
    levels: Vec<Level>,
}

impl StabChain {
    /// Deterministic Schreier-Sims. `base_prefix` is used as the start of
    /// the base (it may be extended).
    pub fn new(degree: usize, gens: &[Perm], base_prefix: &[u32]) -> StabChain {
        let gens: Vec<Perm> = gens.iter().filter(|g| !is_identity(g)).cloned().collect();
        let mut base = base_prefix.to_vec();
        for g in &gens {
            if base.iter().all(|&b| g[b as usize] == b) {
                base.push(first_moved(g));
            }
        }
        let mut chain = StabChain {
            degree,
            levels: base.iter().map(|&b| Level::trivial(degree, b)).collect(),
            base,
            strong_gens: gens,
        };
        let mut i = chain.base.len();
        while i > 0 {
            let level = i - 1;
            chain.rebuild_level(level);
            match chain.first_failing_schreier_generator(level) {
                None => i -= 1,
                Some((h, j)) => {
                    if j == chain.base.len() {
                        let b = first_moved(&h);
                        chain.base.push(b);
                        chain.levels.push(Level::trivial(degree, b));
                    }
                    chain.strong_gens.push(h);
                    // levels level+1..=j see the new generator
                    i = j + 1;
                }
            }
        }
        chain
    }

    fn gens_at(&self, level: usize) -> impl Iterator<Item = &Perm> {
        let prefix = &self.base[..level];
        self.strong_gens
            .iter()
            .filter(move |g| prefix.iter().all(|&b| g[b as usize] == b))
    }

    fn rebuild_level(&mut self, level: usize) {
        let point = self.base[level];
        let gens: Vec<Perm> = self.gens_at(level).cloned().collect();
        let mut transversal: Vec<Option<Perm>> = vec![None; self.degree];
        transversal[point as usize] = Some(identity(self.degree));
        let mut orbit = vec![point];
        let mut head = 0;
        while head < orbit.len() {
            let x = orbit[head];
            head += 1;
            for g in &gens {
                let y = g[x as usize];
                if transversal[y as usize].is_none() {
                    let u = compose(transversal[x as usize].as_ref().unwrap(), g);
                    transversal[y as usize] = Some(u);
                    orbit.push(y);
                }
            }
        }
        self.levels[level] = Level { transversal, orbit };
    }

    fn first_failing_schreier_generator(&self, level: usize) -> Option<(Perm, usize)> {
        let lv = &self.levels[level];
        let gens: Vec<&Perm> = self.gens_at(level).collect();
        for &x in &lv.orbit {
            let ux = lv.transversal[x as usize].as_ref().unwrap();
            for g in &gens {
                let y = g[x as usize];
                let uy = lv.transversal[y as usize].as_ref().unwrap();
                let sch = compose(&compose(ux, g), &inverse(uy));
                let (h, j) = self.strip(sch, level + 1);
                if j < self.base.len() || !is_identity(&h) {
                    return Some((h, j));
                }
            }
        }
        None
    }

    /// Sift `g` through levels `from..`; returns the residue and the level at
    /// which sifting stopped (`base.len()` if it passed every level).
    fn strip(&self, mut g: Perm, from: usize) -> (Perm, usize) {
        for l in from..self.levels.len() {
            let b = g[self.base[l] as usize];
            match &self.levels[l].transversal[b as usize] {
                None => return (g, l),
                Some(u) => g = compose(&g, &inverse(u)),
            }
        }
        (g, self.levels.len())
    }

    pub fn contains(&self, g: &[u32]) -> bool {
        if g.len() != self.degree || !is_permutation(g) {
            return false;
        }
        let (h, j) = self.strip(g.to_vec(), 0);
        j == self.levels.len() && is_identity(&h)
    }

    pub fn base(&self) -> &[u32] {
        &self.base
    }

    pub fn strong_generators(&self) -> &[Perm] {
        &self.strong_gens
    }

    pub fn basic_orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }
}

impl Level {
    fn trivial(degree: usize, point: u32) -> Level {
        let mut transversal = vec![None; degree];
        transversal[point as usize] = Some(identity(degree));
        Level {
            transversal,
            orbit: vec![point],
        }
    }
}

fn first_moved(g: &[u32]) -> u32 {
    g.iter()
        .enumerate()
        .find(|&(x, &y)| x as u32 != y)
        .map(|(x, _)| x as u32)
        .expect("non-identity permutation")
}

/// A permutation group together with a base and strong generating set.
#[derive(Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    base: Vec<u32>,
    orbit_sizes: Vec<usize>,
    order: u128,
    chain: OnceLock<StabChain>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        let chain = OnceLock::new();
        if let Some(c) = self.chain.get() {
            let _ = chain.set(c.clone());
        }
        PermGroup {
            degree: self.degree,
            generators: self.generators.clone(),
            base: self.base.clone(),
            orbit_sizes: self.orbit_sizes.clone(),
            order: self.order,
            chain,
        }
    }
}

impl PermGroup {
    /// Group known to have `generators` as a strong generating set relative
    /// to `base`, with the given basic orbit sizes.
    pub(crate) fn from_strong(
        degree: usize,
        generators: Vec<Perm>,
        base: Vec<u32>,
        orbit_sizes: Vec<usize>,
    ) -> PermGroup {
        let order = orbit_sizes.iter().map(|&s| s as u128).product();
        PermGroup {
            degree,
            generators,
            base,
            orbit_sizes,
            order,
            chain: OnceLock::new(),
        }
    }

    /// The group generated by `generators`, via Schreier-Sims.
    pub fn from_generators(degree: usize, generators: &[Perm]) -> PermGroup {
        let chain = StabChain::new(degree, generators, &[]);
        let group = PermGroup {
            degree,
            generators: generators.to_vec(),
            base: chain.base().to_vec(),
            orbit_sizes: chain.basic_orbit_sizes(),
            order: chain.order(),
            chain: OnceLock::new(),
        };
        let _ = group.chain.set(chain);
        group
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn base(&self) -> &[u32] {
        &self.base
    }

    pub fn basic_orbit_sizes(&self) -> &[usize] {
        &self.orbit_sizes
    }

    pub fn order(&self) -> u128 {
        self.order
    }

    pub fn chain(&self) -> &StabChain {
        self.chain
            .get_or_init(|| StabChain::new(self.degree, &self.generators, &self.base))
    }

    pub fn contains(&self, g: &[u32]) -> bool {
        self.chain().contains(g)
    }

    /// Orbits of `0..degree`, each sorted, ordered by least element.
    pub fn orbits(&self) -> Vec<Vec<u32>> {
        let mut uf = UnionFind::new(self.degree);
        for g in &self.generators {
            for (x, &y) in g.iter().enumerate() {
                uf.union(x, y as usize);
            }
        }
        uf.classes()
    }
}

#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
        }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] as usize != r {
            r = self.parent[r] as usize;
        }
        let mut x = x;
        while self.parent[x] as usize != r {
            let next = self.parent[x] as usize;
            self.parent[x] = r as u32;
            x = next;
        }
        r
    }

    /// Union keeping the smaller root.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.parent[hi] = lo as u32;
        true
    }

    pub(crate) fn classes(&mut self) -> Vec<Vec<u32>> {
        let n = self.parent.len();
        let mut by_root: Vec<Vec<u32>> = vec![vec![]; n];
        for x in 0..n {
            let r = self.find(x);
            by_root[r].push(x as u32);
        }
        by_root.into_iter().filter(|c| !c.is_empty()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: u32) -> Perm {
        (0..n).map(|x| (x + 1) % n).collect()
    }

    #[test]
    fn symmetric_group_orders() {
        for n in 2..=7u32 {
            let mut t = identity(n as usize);
            t.swap(0, 1);
            let g = PermGroup::from_generators(n as usize, &[cycle(n), t]);
            let fact: u128 = (1..=n as u128).product();
            assert_eq!(g.order(), fact);
        }
    }

    #[test]
    fn dihedral_membership() {
        let r = cycle(6);
        let s: Perm = (0..6u32).map(|x| (6 - x) % 6).collect();
        let g = PermGroup::from_generators(6, &[r.clone(), s.clone()]);
        assert_eq!(g.order(), 12);
        assert!(g.contains(&compose(&r, &s)));
        let mut t = identity(6);
        t.swap(0, 1);
        assert!(!g.contains(&t));
        assert!(!g.contains(&[0, 0, 1, 2, 3, 4]));
    }

    #[test]
    fn trivial_and_alternating() {
        let g = PermGroup::from_generators(4, &[]);
        assert_eq!(g.order(), 1);
        assert_eq!(g.orbits().len(), 4);
        let a4 = PermGroup::from_generators(4, &[vec![1, 2, 0, 3], vec![0, 2, 3, 1]]);
        assert_eq!(a4.order(), 12);
    }

    #[test]
    fn strong_chain_rebuild_agrees() {
        let g = PermGroup::from_generators(5, &[cycle(5), vec![0, 2, 4, 1, 3]]);
        assert_eq!(g.order(), 20);
        let h = PermGroup::from_strong(
            5,
            g.chain().strong_generators().to_vec(),
            g.base().to_vec(),
            g.basic_orbit_sizes().to_vec(),
        );
        assert_eq!(h.chain().order(), 20);
    }
}
