//! Exact arithmetic in the two nonabelian groups of order `p^3`.
//!
//! * `G1(p) = <a, b | a^(p^2) = b^p = 1, b^-1 a b = a^(1+p)>`, elements in
//!   normal form `a^i b^j` with `i` mod `p^2` and `j` mod `p`.
//! * `G2(p) = <a, b, c | a^p = b^p = c^p = 1, [a,b] = c, c central>`,
//!   elements in normal form `a^i b^j c^k` with all exponents mod `p`.
//!
//! Products use closed forms obtained by pushing `b`-letters past `a`-letters:
//! in `G1`, `b^j a^i = a^(i (1+p)^-j) b^j` and `(1+p)^-j = 1 - jp (mod p^2)`;
//! in `G2`, `b^j a^i = a^i b^j c^(-ij)`.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::modular::is_prime;

/// Largest prime accepted; keeps `p^3` and all intermediate products in `u64`.
pub const MAX_PRIME: u32 = 97;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("p = {0} is not an odd prime <= {MAX_PRIME}")]
    BadPrime(u32),
    #[error("elements belong to different groups ({0} vs {1})")]
    DescriptorMismatch(GroupDescriptor, GroupDescriptor),
    #[error("cannot parse group element {word:?}: {reason}")]
    Parse { word: String, reason: String },
    #[error("unknown group {0:?} (expected G1 or G2)")]
    UnknownGroup(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupKind {
    G1,
    G2,
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupKind::G1 => "G1",
            GroupKind::G2 => "G2",
        })
    }
}

impl FromStr for GroupKind {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "g1" => Ok(GroupKind::G1),
            "g2" => Ok(GroupKind::G2),
            _ => Err(GroupError::UnknownGroup(s.to_string())),
        }
    }
}

/// One of `G1(p)`, `G2(p)` for an odd prime `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupDescriptor {
    pub kind: GroupKind,
    pub p: u32,
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.kind, self.p)
    }
}

impl GroupDescriptor {
    pub fn new(kind: GroupKind, p: u32) -> Result<Self, GroupError> {
        if !(3..=MAX_PRIME).contains(&p) || !is_prime(p as u64) {
            return Err(GroupError::BadPrime(p));
        }
        Ok(Self { kind, p })
    }

    pub fn g1(p: u32) -> Result<Self, GroupError> {
        Self::new(GroupKind::G1, p)
    }

    pub fn g2(p: u32) -> Result<Self, GroupError> {
        Self::new(GroupKind::G2, p)
    }

    pub fn order(&self) -> usize {
        (self.p as usize).pow(3)
    }

    /// Modulus of the `a`-exponent: `p^2` in `G1`, `p` in `G2`.
    pub fn a_modulus(&self) -> u32 {
        match self.kind {
            GroupKind::G1 => self.p * self.p,
            GroupKind::G2 => self.p,
        }
    }

    /// Element `a^i b^j c^k`, exponents reduced. `k` must be 0 for `G1`.
    pub fn element(&self, i: i64, j: i64, k: i64) -> GroupElement {
        let p = self.p as i64;
        let k = match self.kind {
            GroupKind::G1 => {
                debug_assert_eq!(k, 0, "G1 has no c generator");
                0
            }
            GroupKind::G2 => k.rem_euclid(p) as u32,
        };
        GroupElement {
            desc: *self,
            i: i.rem_euclid(self.a_modulus() as i64) as u32,
            j: j.rem_euclid(p) as u32,
            k,
        }
    }

    pub fn identity(&self) -> GroupElement {
        self.element(0, 0, 0)
    }

    pub fn a(&self) -> GroupElement {
        self.element(1, 0, 0)
    }

    pub fn b(&self) -> GroupElement {
        self.element(0, 1, 0)
    }

    /// The central generator `c = [a, b]` of `G2`; `None` for `G1`.
    pub fn c(&self) -> Option<GroupElement> {
        match self.kind {
            GroupKind::G1 => None,
            GroupKind::G2 => Some(self.element(0, 0, 1)),
        }
    }

    /// Inverse of [`GroupElement::index`]: lexicographic order on exponent tuples.
    pub fn from_index(&self, index: usize) -> GroupElement {
        let p = self.p as usize;
        debug_assert!(index < self.order());
        match self.kind {
            GroupKind::G1 => GroupElement {
                desc: *self,
                i: (index / p) as u32,
                j: (index % p) as u32,
                k: 0,
            },
            GroupKind::G2 => GroupElement {
                desc: *self,
                i: (index / (p * p)) as u32,
                j: (index / p % p) as u32,
                k: (index % p) as u32,
            },
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order()).map(move |x| self.from_index(x))
    }

    /// Parse a word such as `a^2*b*c^-1`. `1` (or an empty string) is the identity.
    pub fn parse_element(&self, word: &str) -> Result<GroupElement, GroupError> {
        let err = |reason: &str| GroupError::Parse {
            word: word.to_string(),
            reason: reason.to_string(),
        };
        let trimmed: String = word.chars().filter(|c| !c.is_whitespace()).collect();
        let mut acc = self.identity();
        if trimmed.is_empty() || trimmed == "1" || trimmed == "e" {
            return Ok(acc);
        }
        for factor in trimmed.split('*') {
            let mut chars = factor.chars();
            let gen = match chars.next() {
                Some('a') => self.a(),
                Some('b') => self.b(),
                Some('c') => self.c().ok_or_else(|| err("G1 has no generator c"))?,
                Some('1') if factor == "1" => continue,
                _ => return Err(err(&format!("bad factor {factor:?}"))),
            };
            let rest = chars.as_str();
            let exp: i64 = if rest.is_empty() {
                1
            } else if let Some(e) = rest.strip_prefix('^') {
                let e = e.trim_start_matches('(').trim_end_matches(')');
                e.parse().map_err(|_| err(&format!("bad exponent in {factor:?}")))?
            } else {
                return Err(err(&format!("bad factor {factor:?}")));
            };
            acc = acc * gen.pow(exp);
        }
        Ok(acc)
    }

    /// Closure of `set` under multiplication has size `p^3`.
    pub fn generates(&self, set: &[GroupElement]) -> bool {
        if set.is_empty() {
            return false;
        }
        let n = self.order();
        let mut seen = vec![false; n];
        let id = self.identity();
        seen[id.index()] = true;
        let mut stack = vec![id];
        let mut count = 1;
        while let Some(g) = stack.pop() {
            for s in set {
                let h = g * *s;
                if !seen[h.index()] {
                    seen[h.index()] = true;
                    count += 1;
                    stack.push(h);
                }
            }
        }
        count == n
    }

    /// Generation test through the Frattini quotient `G/Phi(G) = Z_p^2`:
    /// a subset generates iff its images span the quotient.
    pub fn generates_fast(&self, set: &[GroupElement]) -> bool {
        let p = self.p as u64;
        let vecs: Vec<(u64, u64)> = set.iter().map(|g| g.frattini_image()).collect();
        vecs.iter().enumerate().any(|(x, u)| {
            vecs[x + 1..]
                .iter()
                .any(|v| !(u.0 * v.1 + p * p - (u.1 * v.0) % p).is_multiple_of(p))
        })
    }
}

/// An element of `G1(p)` or `G2(p)` in normal form.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupElement {
    desc: GroupDescriptor,
    i: u32,
    j: u32,
    k: u32,
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.desc, self)
    }
}

impl GroupElement {
    pub fn descriptor(&self) -> GroupDescriptor {
        self.desc
    }

    /// Exponents `(i, j, k)` of the normal form; `k = 0` in `G1`.
    pub fn exponents(&self) -> (u32, u32, u32) {
        (self.i, self.j, self.k)
    }

    pub fn index(&self) -> usize {
        let p = self.desc.p as usize;
        match self.desc.kind {
            GroupKind::G1 => self.i as usize * p + self.j as usize,
            GroupKind::G2 => (self.i as usize * p + self.j as usize) * p + self.k as usize,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.i == 0 && self.j == 0 && self.k == 0
    }

    fn frattini_image(&self) -> (u64, u64) {
        ((self.i % self.desc.p) as u64, self.j as u64)
    }

    pub fn try_mul(&self, other: &GroupElement) -> Result<GroupElement, GroupError> {
        if self.desc != other.desc {
            return Err(GroupError::DescriptorMismatch(self.desc, other.desc));
        }
        Ok(self.mul_unchecked(other))
    }

    #[inline]
    fn mul_unchecked(&self, o: &GroupElement) -> GroupElement {
        let p = self.desc.p as u64;
        match self.desc.kind {
            GroupKind::G1 => {
                let m = p * p;
                // (1+p)^-j1 = 1 - j1 p (mod p^2)
                let twist = (1 + m - self.j as u64 * p) % m;
                GroupElement {
                    desc: self.desc,
                    i: ((self.i as u64 + o.i as u64 * twist) % m) as u32,
                    j: ((self.j + o.j) as u64 % p) as u32,
                    k: 0,
                }
            }
            GroupKind::G2 => GroupElement {
                desc: self.desc,
                i: ((self.i + o.i) as u64 % p) as u32,
                j: ((self.j + o.j) as u64 % p) as u32,
                k: ((self.k as u64 + o.k as u64 + (p - self.j as u64) * o.i as u64) % p) as u32,
            },
        }
    }

    pub fn inverse(&self) -> GroupElement {
        let p = self.desc.p as u64;
        match self.desc.kind {
            GroupKind::G1 => {
                let m = p * p;
                // a^i b^j -> a^(-i (1 + jp)) b^(-j)
                let i = (m - self.i as u64 * (1 + self.j as u64 * p) % m) % m;
                GroupElement {
                    desc: self.desc,
                    i: i as u32,
                    j: ((p - self.j as u64) % p) as u32,
                    k: 0,
                }
            }
            GroupKind::G2 => {
                let (i, j, k) = (self.i as u64, self.j as u64, self.k as u64);
                GroupElement {
                    desc: self.desc,
                    i: ((p - i) % p) as u32,
                    j: ((p - j) % p) as u32,
                    k: ((2 * p * p - k - i * j % p) % p) as u32,
                }
            }
        }
    }

    /// `g^n` for any integer `n`, by square-and-multiply.
    pub fn pow(&self, n: i64) -> GroupElement {
        let mut base = if n < 0 { self.inverse() } else { *self };
        let mut e = n.unsigned_abs();
        let mut acc = self.desc.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            e >>= 1;
        }
        acc
    }

    /// `[g, h] = g^-1 h^-1 g h`.
    pub fn commutator(&self, h: &GroupElement) -> GroupElement {
        self.inverse() * h.inverse() * *self * *h
    }

    /// `h^-1 g h`.
    pub fn conjugate_by(&self, h: &GroupElement) -> GroupElement {
        h.inverse() * *self * *h
    }

    /// Multiplicative order, always one of `1, p, p^2`.
    pub fn order(&self) -> u32 {
        let p = self.desc.p;
        let mut d = 1;
        let mut x = *self;
        while !x.is_identity() {
            x = x.pow(p as i64);
            d *= p;
        }
        d
    }
}

impl Mul for GroupElement {
    type Output = GroupElement;

    /// Panics if the operands come from different groups; see [`GroupElement::try_mul`].
    fn mul(self, rhs: GroupElement) -> GroupElement {
        assert_eq!(self.desc, rhs.desc, "multiplying elements of different groups");
        self.mul_unchecked(&rhs)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("1");
        }
        let mut first = true;
        for (name, e) in [('a', self.i), ('b', self.j), ('c', self.k)] {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sorted, deduplicated copy of `set` (by element index).
pub fn normalize_set(set: &[GroupElement]) -> Vec<GroupElement> {
    let mut v = set.to_vec();
    v.sort_by_key(|g| g.index());
    v.dedup();
    v
}

/// `R ∪ R^-1`, sorted by index.
pub fn symmetrize(set: &[GroupElement]) -> Vec<GroupElement> {
    let mut v: Vec<GroupElement> = set.iter().flat_map(|g| [*g, g.inverse()]).collect();
    v.sort_by_key(|g| g.index());
    v.dedup();
    v
}

pub fn is_symmetric(set: &[GroupElement]) -> bool {
    let norm = normalize_set(set);
    norm.iter()
        .all(|g| norm.binary_search_by_key(&g.inverse().index(), |x| x.index()).is_ok())
}

pub fn format_set(set: &[GroupElement]) -> Vec<String> {
    set.iter().map(|g| g.to_string()).collect()
}

/// Parse a comma-separated list of words.
pub fn parse_set(desc: &GroupDescriptor, words: &str) -> Result<Vec<GroupElement>, GroupError> {
    words
        .split(',')
        .filter(|w| !w.trim().is_empty())
        .map(|w| desc.parse_element(w))
        .collect()
}
