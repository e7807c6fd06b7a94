//! Automorphisms of `G1(p)` and `G2(p)`, setwise stabilizers `Aut(G,S)` and
//! the automorphism-based Cayley isomorphism test.
//!
//! An automorphism is stored by the images of the generators. The full
//! element table is only materialized once an automorphism has been applied
//! more than `p` times.

use std::collections::VecDeque;
use std::fmt;
use std::sync::atomic::{AtomicU32, Ordering};
use std::sync::OnceLock;

use thiserror::Error;

use crate::pgroup::{normalize_set, GroupDescriptor, GroupElement, GroupKind};

/// The defining relation an image pair failed to satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    /// Images lie in a different group.
    WrongGroup,
    /// `b^p = 1`
    BOrder,
    /// `a^(p^2) = 1` (G1) or `a^p = 1` (G2)
    AOrder,
    /// `b^-1 a b = a^(1+p)`
    Twist,
    /// `c^p = 1`, `[a,c] = [b,c] = 1`
    CentralC,
    /// The images must generate the whole group.
    Surjective,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::WrongGroup => "images in wrong group",
            Relation::BOrder => "b^p = 1",
            Relation::AOrder => "a^(p^2) = 1 / a^p = 1",
            Relation::Twist => "b^-1 a b = a^(1+p)",
            Relation::CentralC => "c^p = 1, [a,c] = [b,c] = 1",
            Relation::Surjective => "images generate the group",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutError {
    #[error("generator images do not extend to an automorphism: {0}")]
    Reject(Relation),
    #[error("connection set does not generate the group")]
    NotGenerating,
    #[error("|S| = {size} >= 2p = {bound}; use a graph-level isomorphism test instead")]
    PreconditionViolated { size: usize, bound: usize },
}

pub struct Automorphism {
    desc: GroupDescriptor,
    image_a: GroupElement,
    image_b: GroupElement,
    image_c: Option<GroupElement>,
    uses: AtomicU32,
    table: OnceLock<Vec<u32>>,
}

impl Clone for Automorphism {
    fn clone(&self) -> Self {
        Automorphism {
            desc: self.desc,
            image_a: self.image_a,
            image_b: self.image_b,
            image_c: self.image_c,
            uses: AtomicU32::new(self.uses.load(Ordering::Relaxed)),
            table: self.table.clone(),
        }
    }
}

impl PartialEq for Automorphism {
    fn eq(&self, other: &Self) -> bool {
        self.image_a == other.image_a && self.image_b == other.image_b
    }
}

impl Eq for Automorphism {}

impl fmt::Debug for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a->{}, b->{}", self.image_a, self.image_b)?;
        if let Some(c) = self.image_c {
            write!(f, ", c->{}", c)?;
        }
        Ok(())
    }
}

/// The unique automorphism with `a -> image_a`, `b -> image_b`, if the images
/// satisfy the defining relations and generate the group.
pub fn extend_automorphism(
    desc: GroupDescriptor,
    image_a: GroupElement,
    image_b: GroupElement,
) -> Result<Automorphism, AutError> {
    if image_a.descriptor() != desc || image_b.descriptor() != desc {
        return Err(AutError::Reject(Relation::WrongGroup));
    }
    let p = desc.p as i64;
    let image_c = match desc.kind {
        GroupKind::G1 => {
            if !image_a.pow(p * p).is_identity() {
                return Err(AutError::Reject(Relation::AOrder));
            }
            if !image_b.pow(p).is_identity() {
                return Err(AutError::Reject(Relation::BOrder));
            }
            if image_a.conjugate_by(&image_b) != image_a.pow(1 + p) {
                return Err(AutError::Reject(Relation::Twist));
            }
            None
        }
        GroupKind::G2 => {
            if !image_a.pow(p).is_identity() {
                return Err(AutError::Reject(Relation::AOrder));
            }
            if !image_b.pow(p).is_identity() {
                return Err(AutError::Reject(Relation::BOrder));
            }
            let c = image_a.commutator(&image_b);
            if !c.pow(p).is_identity() || !image_a.commutator(&c).is_identity() || !image_b.commutator(&c).is_identity()
            {
                return Err(AutError::Reject(Relation::CentralC));
            }
            Some(c)
        }
    };
    if !desc.generates_fast(&[image_a, image_b]) {
        return Err(AutError::Reject(Relation::Surjective));
    }
    Ok(Automorphism {
        desc,
        image_a,
        image_b,
        image_c,
        uses: AtomicU32::new(0),
        table: OnceLock::new(),
    })
}

impl Automorphism {
    pub fn identity(desc: GroupDescriptor) -> Automorphism {
        extend_automorphism(desc, desc.a(), desc.b()).expect("identity automorphism")
    }

    pub fn descriptor(&self) -> GroupDescriptor {
        self.desc
    }

    pub fn image_a(&self) -> GroupElement {
        self.image_a
    }

    pub fn image_b(&self) -> GroupElement {
        self.image_b
    }

    pub fn image_c(&self) -> Option<GroupElement> {
        self.image_c
    }

    fn apply_direct(&self, g: &GroupElement) -> GroupElement {
        let (i, j, k) = g.exponents();
        let mut x = self.image_a.pow(i as i64) * self.image_b.pow(j as i64);
        if let Some(c) = self.image_c {
            x = x * c.pow(k as i64);
        }
        x
    }

    fn full_table(&self) -> &Vec<u32> {
        self.table.get_or_init(|| {
            self.desc
                .elements()
                .map(|g| self.apply_direct(&g).index() as u32)
                .collect()
        })
    }

    /// Image of `g`.
    pub fn apply(&self, g: &GroupElement) -> GroupElement {
        debug_assert_eq!(g.descriptor(), self.desc);
        if let Some(t) = self.table.get() {
            return self.desc.from_index(t[g.index()] as usize);
        }
        let used = self.uses.fetch_add(1, Ordering::Relaxed);
        if used >= self.desc.p {
            return self.desc.from_index(self.full_table()[g.index()] as usize);
        }
        self.apply_direct(g)
    }

    /// Image of every element, as an index permutation of `0..p^3`.
    pub fn as_index_permutation(&self) -> Vec<u32> {
        self.full_table().clone()
    }

    pub fn apply_set(&self, set: &[GroupElement]) -> Vec<GroupElement> {
        normalize_set(&set.iter().map(|g| self.apply(g)).collect::<Vec<_>>())
    }

    /// `self` followed by `other` (right action: `g^(self other) = (g^self)^other`).
    pub fn then(&self, other: &Automorphism) -> Automorphism {
        extend_automorphism(self.desc, other.apply(&self.image_a), other.apply(&self.image_b))
            .expect("composition of automorphisms")
    }

    pub fn inverse(&self) -> Automorphism {
        let table = self.full_table();
        let mut inv = vec![0u32; table.len()];
        for (x, &y) in table.iter().enumerate() {
            inv[y as usize] = x as u32;
        }
        let a = self.desc.from_index(inv[self.desc.a().index()] as usize);
        let b = self.desc.from_index(inv[self.desc.b().index()] as usize);
        extend_automorphism(self.desc, a, b).expect("inverse automorphism")
    }

    pub fn is_identity(&self) -> bool {
        self.image_a == self.desc.a() && self.image_b == self.desc.b()
    }

    pub fn order(&self) -> usize {
        let mut x = self.clone();
        let mut n = 1;
        while !x.is_identity() {
            x = x.then(self);
            n += 1;
        }
        n
    }
}

/// Words in `gens` (as generator positions, multiplied on the right) that
/// evaluate to each target. Assumes `gens` generate the group.
fn words_for(desc: GroupDescriptor, gens: [GroupElement; 2], targets: &[GroupElement]) -> Vec<Vec<u8>> {
    let n = desc.order();
    let mut parent: Vec<(u32, u8)> = vec![(u32::MAX, 0); n];
    let id = desc.identity();
    parent[id.index()] = (id.index() as u32, 0);
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for (gi, s) in gens.iter().enumerate() {
            let h = g * *s;
            if parent[h.index()].0 == u32::MAX {
                parent[h.index()] = (g.index() as u32, gi as u8);
                queue.push_back(h);
            }
        }
    }
    targets
        .iter()
        .map(|t| {
            let mut word = vec![];
            let mut cur = t.index();
            while cur != id.index() {
                let (prev, gi) = parent[cur];
                debug_assert_ne!(prev, u32::MAX, "generators do not reach target");
                word.push(gi);
                cur = prev as usize;
            }
            word.reverse();
            word
        })
        .collect()
}

fn eval_word(desc: GroupDescriptor, word: &[u8], images: [GroupElement; 2]) -> GroupElement {
    word.iter().fold(desc.identity(), |acc, &gi| acc * images[gi as usize])
}

/// First pair `(s1, s2)` in index order that generates the group.
fn generating_pair(desc: GroupDescriptor, set: &[GroupElement]) -> Option<[GroupElement; 2]> {
    for (x, s1) in set.iter().enumerate() {
        for s2 in &set[x + 1..] {
            if desc.generates_fast(&[*s1, *s2]) {
                return Some([*s1, *s2]);
            }
        }
    }
    None
}

/// Every automorphism mapping `source` onto `target` setwise, found by sending
/// a fixed generating pair of `source` to all pairs of `target`. Stops after
/// the first hit when `first_only` is set.
fn set_mappings(
    desc: GroupDescriptor,
    source: &[GroupElement],
    target: &[GroupElement],
    first_only: bool,
) -> Result<Vec<Automorphism>, AutError> {
    let source = normalize_set(source);
    let target = normalize_set(target);
    let pair = generating_pair(desc, &source).ok_or(AutError::NotGenerating)?;
    if source.len() != target.len() {
        return Ok(vec![]);
    }
    let words = words_for(desc, pair, &[desc.a(), desc.b()]);
    let orders = [pair[0].order(), pair[1].order()];
    let target_orders: Vec<u32> = target.iter().map(|t| t.order()).collect();
    let mut found = vec![];
    for (x, t1) in target.iter().enumerate() {
        if target_orders[x] != orders[0] {
            continue;
        }
        for (y, t2) in target.iter().enumerate() {
            if x == y || target_orders[y] != orders[1] {
                continue;
            }
            let images = [*t1, *t2];
            let ia = eval_word(desc, &words[0], images);
            let ib = eval_word(desc, &words[1], images);
            let Ok(alpha) = extend_automorphism(desc, ia, ib) else {
                continue;
            };
            if alpha.apply_direct(&pair[0]) != *t1 || alpha.apply_direct(&pair[1]) != *t2 {
                continue;
            }
            let mapped = source.iter().all(|s| {
                let im = alpha.apply_direct(s).index();
                target.binary_search_by_key(&im, |t| t.index()).is_ok()
            });
            if mapped {
                found.push(alpha);
                if first_only {
                    return Ok(found);
                }
            }
        }
    }
    Ok(found)
}

/// The setwise stabilizer `Aut(G,S) = { alpha : S^alpha = S }`.
#[derive(Debug, Clone)]
pub struct AutStabilizer {
    pub base_set: Vec<GroupElement>,
    pub generators: Vec<Automorphism>,
    pub order: usize,
    elements: Vec<Automorphism>,
}

impl AutStabilizer {
    /// All group elements (the stabilizer is small: it acts faithfully on `S`).
    pub fn elements(&self) -> &[Automorphism] {
        &self.elements
    }

    /// Action of each element on `base_set`, as permutations of positions.
    pub fn set_permutations(&self) -> Vec<Vec<usize>> {
        self.elements
            .iter()
            .map(|alpha| {
                self.base_set
                    .iter()
                    .map(|s| {
                        let im = alpha.apply(s).index();
                        self.base_set
                            .binary_search_by_key(&im, |t| t.index())
                            .expect("stabilizer element leaves set")
                    })
                    .collect()
            })
            .collect()
    }

    /// Orbit of `s` under the stabilizer.
    pub fn orbit_of(&self, s: &GroupElement) -> Vec<GroupElement> {
        normalize_set(&self.elements.iter().map(|a| a.apply(s)).collect::<Vec<_>>())
    }

    /// Some element maps some `s` to `s^-1`.
    pub fn has_inverting_element(&self) -> bool {
        self.elements
            .iter()
            .any(|alpha| self.base_set.iter().any(|s| alpha.apply(s) == s.inverse()))
    }
}

pub fn aut_stabilizer(desc: GroupDescriptor, set: &[GroupElement]) -> Result<AutStabilizer, AutError> {
    let base_set = normalize_set(set);
    let elements = set_mappings(desc, &base_set, &base_set, false)?;
    let generators = generating_subset(desc, &elements);
    Ok(AutStabilizer {
        base_set,
        generators,
        order: elements.len(),
        elements,
    })
}

/// Greedy generating subset of a finite automorphism group.
fn generating_subset(desc: GroupDescriptor, elements: &[Automorphism]) -> Vec<Automorphism> {
    let mut gens: Vec<Automorphism> = vec![];
    let mut closure = vec![Automorphism::identity(desc)];
    for alpha in elements {
        if closure.contains(alpha) {
            continue;
        }
        gens.push(alpha.clone());
        closure = close_under(&gens, desc);
    }
    gens
}

/// Closure of `gens` under composition.
pub fn close_under(gens: &[Automorphism], desc: GroupDescriptor) -> Vec<Automorphism> {
    let mut all = vec![Automorphism::identity(desc)];
    let mut frontier = 0;
    while frontier < all.len() {
        let x = all[frontier].clone();
        frontier += 1;
        for g in gens {
            let y = x.then(g);
            if !all.contains(&y) {
                all.push(y);
            }
        }
    }
    all
}

/// An automorphism `alpha` with `S^alpha = T`, searched without restricting `|S|`.
pub fn automorphism_mapping(
    desc: GroupDescriptor,
    s: &[GroupElement],
    t: &[GroupElement],
) -> Result<Option<Automorphism>, AutError> {
    if normalize_set(t).is_empty() || !desc.generates_fast(t) {
        return Err(AutError::NotGenerating);
    }
    Ok(set_mappings(desc, s, t, true)?.into_iter().next())
}

/// Decide `Cay(G,S) = Cay(G,T)` through a group automorphism. Only valid as a
/// graph isomorphism test when `|S| = |T| < 2p`.
pub fn cayley_isomorphic(
    desc: GroupDescriptor,
    s: &[GroupElement],
    t: &[GroupElement],
) -> Result<Option<Automorphism>, AutError> {
    let size = normalize_set(s).len();
    let bound = 2 * desc.p as usize;
    if size >= bound {
        return Err(AutError::PreconditionViolated { size, bound });
    }
    automorphism_mapping(desc, s, t)
}

/// `S` has no involution and no element of `Aut(G,S)` inverts an element of `S`.
pub fn inversion_free(desc: GroupDescriptor, set: &[GroupElement]) -> Result<bool, AutError> {
    if set.iter().any(|s| !s.is_identity() && s.pow(2).is_identity()) {
        return Ok(false);
    }
    Ok(!aut_stabilizer(desc, set)?.has_inverting_element())
}

/// `|Aut(G)|` by counting image pairs `(x, y)` that extend.
pub fn count_automorphisms(desc: GroupDescriptor) -> usize {
    let els: Vec<GroupElement> = desc.elements().collect();
    let mut n = 0;
    for x in &els {
        for y in &els {
            if extend_automorphism(desc, *x, *y).is_ok() {
                n += 1;
            }
        }
    }
    n
}
