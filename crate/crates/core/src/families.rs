//! The two named half-arc-transitive families: `Γ^{j,k}` on `G1(p)` with
//! connection set `T^{j,k}`, and `Γ_{4,k}` on `G2(p)` with `S_{4,k}`.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::autgroup::cayley_isomorphic;
use crate::cayley::{build_graph, CayleyGraph};
use crate::modular::{inv_mod, smallest_of_order, unit_order, Residue};
use crate::pgroup::{symmetrize, GroupDescriptor, GroupElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("invalid family parameters: {0}")]
    BadParams(String),
}

fn bad(msg: impl Into<String>) -> FamilyError {
    FamilyError::BadParams(msg.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `Γ^{j,k}` on `G1(p)`, valency `2j`.
    GammaJk,
    /// `Γ_{4,k}` on `G2(p)`, valency 8.
    Gamma4k,
}

impl std::str::FromStr for Family {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "gamma" | "gamma_jk" => Ok(Family::GammaJk),
            "gamma4" | "gamma4k" => Ok(Family::Gamma4k),
            _ => Err(bad(format!("unknown family {s:?} (expected gamma or gamma4)"))),
        }
    }
}

/// Validated parameters. `unit` is `e` (order `j` mod `p^2`) for `GammaJk`
/// and `λ` (order 4 mod `p`) for `Gamma4k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilyParams {
    pub family: Family,
    pub p: u32,
    pub j: Option<u32>,
    pub k: u32,
    pub unit: u32,
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::GammaJk => write!(f, "gamma_jk({},{},{})", self.p, self.j.unwrap_or(0), self.k),
            Family::Gamma4k => write!(f, "gamma4k({},{})", self.p, self.k),
        }
    }
}

fn descriptor(family: Family, p: u32) -> Result<GroupDescriptor, FamilyError> {
    let d = match family {
        Family::GammaJk => GroupDescriptor::g1(p),
        Family::Gamma4k => GroupDescriptor::g2(p),
    };
    d.map_err(|e| bad(e.to_string()))
}

/// Canonical `e`: the smallest unit of order `j` modulo `p^2`.
pub fn canonical_e(p: u32, j: u32) -> Result<u32, FamilyError> {
    check_j(p, j)?;
    let r = smallest_of_order(j as u64, (p as u64).pow(2)).map_err(|e| bad(e.to_string()))?;
    Ok(r.expect("j | p-1 so units of order j exist").value() as u32)
}

/// Canonical `λ`: the smallest unit of order 4 modulo `p`.
pub fn canonical_lambda(p: u32) -> Result<u32, FamilyError> {
    descriptor(Family::Gamma4k, p)?;
    if !(p - 1).is_multiple_of(4) {
        return Err(bad(format!("4 does not divide p - 1 = {}", p - 1)));
    }
    let r = smallest_of_order(4, p as u64).map_err(|e| bad(e.to_string()))?;
    Ok(r.expect("4 | p-1").value() as u32)
}

fn check_j(p: u32, j: u32) -> Result<(), FamilyError> {
    descriptor(Family::GammaJk, p)?;
    if j <= 1 || j >= p || !(p - 1).is_multiple_of(j) {
        return Err(bad(format!("j = {j} must satisfy 1 < j < p and j | p - 1 = {}", p - 1)));
    }
    Ok(())
}

/// `2^-1 (1 + λ) mod p`, the excluded `k` for `Γ_{4,k}`.
pub fn excluded_k(p: u32, lambda: u32) -> u32 {
    let half = inv_mod(Residue::new(2, p as u64).expect("p >= 3")).expect("p odd");
    (half * Residue::new(1 + lambda as i64, p as u64).unwrap()).value() as u32
}

impl FamilyParams {
    pub fn gamma_jk(p: u32, j: u32, k: u32, e: Option<u32>) -> Result<Self, FamilyError> {
        check_j(p, j)?;
        if k == 0 || k >= p {
            return Err(bad(format!("k = {k} must lie in 1..={}", p - 1)));
        }
        let e = match e {
            Some(e) => {
                let r = Residue::new(e as i64, (p as u64).pow(2)).map_err(|e| bad(e.to_string()))?;
                if unit_order(r).ok() != Some(j as u64) {
                    return Err(bad(format!("e = {e} does not have order {j} modulo {}", p * p)));
                }
                r.value() as u32
            }
            None => canonical_e(p, j)?,
        };
        Ok(FamilyParams {
            family: Family::GammaJk,
            p,
            j: Some(j),
            k,
            unit: e,
        })
    }

    pub fn gamma4k(p: u32, k: u32, lambda: Option<u32>) -> Result<Self, FamilyError> {
        let canonical = canonical_lambda(p)?;
        let lambda = match lambda {
            Some(l) => {
                let r = Residue::new(l as i64, p as u64).unwrap();
                if unit_order(r).ok() != Some(4) {
                    return Err(bad(format!("lambda = {l} does not have order 4 modulo {p}")));
                }
                r.value() as u32
            }
            None => canonical,
        };
        if k >= p {
            return Err(bad(format!("k = {k} must lie in 0..{p}")));
        }
        if k == excluded_k(p, lambda) {
            return Err(bad(format!("k = {k} equals 2^-1(1 + lambda) mod {p}")));
        }
        Ok(FamilyParams {
            family: Family::Gamma4k,
            p,
            j: None,
            k,
            unit: lambda,
        })
    }

    pub fn descriptor(&self) -> GroupDescriptor {
        descriptor(self.family, self.p).expect("validated")
    }

    /// The half `R` of the connection set that an automorphism permutes
    /// cyclically (`{b^k a^{e^m}}` or `R_{4,k}`), in the listed order.
    pub fn oriented_set(&self) -> Vec<GroupElement> {
        let d = self.descriptor();
        match self.family {
            Family::GammaJk => {
                let bk = d.b().pow(self.k as i64);
                let n = (self.p as u64).pow(2);
                (0..self.j.unwrap())
                    .map(|m| {
                        let em = Residue::new(self.unit as i64, n).unwrap().pow(m as u64).value();
                        bk * d.a().pow(em as i64)
                    })
                    .collect()
            }
            Family::Gamma4k => {
                let (l, k) = (self.unit as i64, self.k as i64);
                vec![d.a(), d.b(), d.element(l, l - 1, k), d.element(-l - 1, -l, 1 - k)]
            }
        }
    }

    /// Full symmetric connection set, sorted by element index.
    pub fn connection_set(&self) -> Vec<GroupElement> {
        symmetrize(&self.oriented_set())
    }

    pub fn graph(&self) -> CayleyGraph {
        build_graph(self.descriptor(), &self.connection_set()).expect("family sets are valid")
    }

    /// Admissible `k` values for the same family, prime, `j` and unit.
    pub fn admissible_k(&self) -> Vec<u32> {
        match self.family {
            Family::GammaJk => (1..self.p).collect(),
            Family::Gamma4k => {
                let ex = excluded_k(self.p, self.unit);
                (0..self.p).filter(|&k| k != ex).collect()
            }
        }
    }

    pub fn with_k(&self, k: u32) -> Result<Self, FamilyError> {
        match self.family {
            Family::GammaJk => FamilyParams::gamma_jk(self.p, self.j.unwrap(), k, Some(self.unit)),
            Family::Gamma4k => FamilyParams::gamma4k(self.p, k, Some(self.unit)),
        }
    }
}

/// `Γ^{j,k}` with the canonical `e`.
pub fn gamma_jk(p: u32, j: u32, k: u32) -> Result<CayleyGraph, FamilyError> {
    Ok(FamilyParams::gamma_jk(p, j, k, None)?.graph())
}

/// `Γ_{4,k}` with the canonical `λ`.
pub fn gamma4k(p: u32, k: u32) -> Result<CayleyGraph, FamilyError> {
    Ok(FamilyParams::gamma4k(p, k, None)?.graph())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoClasses {
    pub family: Family,
    pub p: u32,
    pub j: Option<u32>,
    pub unit: u32,
    pub admissible: Vec<u32>,
    /// `matrix[x][y]`: graphs for `admissible[x]` and `admissible[y]` are isomorphic.
    pub matrix: Vec<Vec<bool>>,
    /// Classes of `k` values, each ascending, ordered by least element.
    pub classes: Vec<Vec<u32>>,
}

/// Pairwise `cayley_isomorphic` over all admissible `k` (any `k` in `base`
/// fixes the family, prime, `j` and unit).
pub fn family_iso_classes(base: &FamilyParams) -> IsoClasses {
    let ks = base.admissible_k();
    let sets: Vec<Vec<GroupElement>> = ks.iter().map(|&k| base.with_k(k).unwrap().connection_set()).collect();
    let d = base.descriptor();
    let n = ks.len();
    let upper: Vec<(usize, usize, bool)> = (0..n)
        .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(x, y)| {
            let iso = cayley_isomorphic(d, &sets[x], &sets[y]).expect("|S| < 2p for both families");
            (x, y, iso.is_some())
        })
        .collect();
    let mut matrix = vec![vec![false; n]; n];
    for (x, row) in matrix.iter_mut().enumerate() {
        row[x] = true;
    }
    for (x, y, iso) in upper {
        matrix[x][y] = iso;
        matrix[y][x] = iso;
    }
    let mut classes: Vec<Vec<u32>> = vec![];
    let mut assigned = vec![false; n];
    for x in 0..n {
        if assigned[x] {
            continue;
        }
        let class: Vec<usize> = (x..n).filter(|&y| matrix[x][y]).collect();
        for &y in &class {
            assigned[y] = true;
        }
        classes.push(class.into_iter().map(|y| ks[y]).collect());
    }
    IsoClasses {
        family: base.family,
        p: base.p,
        j: base.j,
        unit: base.unit,
        admissible: ks,
        matrix,
        classes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_jk_example() {
        let f = FamilyParams::gamma_jk(7, 3, 1, None).unwrap();
        assert_eq!(f.unit, 18);
        let d = f.descriptor();
        let b = d.b();
        let expect: Vec<GroupElement> = [1, 18, 30].iter().map(|&m| b * d.a().pow(m)).collect();
        assert_eq!(f.oriented_set(), expect);
        let g = f.graph();
        assert_eq!(g.n(), 343);
        assert_eq!(g.graph().regular_degree(), Some(6));
        assert!(g.is_connected());
        assert!(FamilyParams::gamma_jk(7, 2, 3, None).is_ok());
        assert!(FamilyParams::gamma_jk(7, 4, 1, None).is_err());
        assert!(FamilyParams::gamma_jk(7, 3, 0, None).is_err());
        assert!(FamilyParams::gamma_jk(7, 3, 7, None).is_err());
        assert!(FamilyParams::gamma_jk(7, 3, 1, Some(2)).is_err());
        assert_eq!(FamilyParams::gamma_jk(7, 3, 1, Some(30)).unwrap().unit, 30);
    }

    #[test]
    fn gamma4k_example() {
        let f = FamilyParams::gamma4k(5, 0, None).unwrap();
        assert_eq!(f.unit, 2);
        let d = f.descriptor();
        assert_eq!(
            f.oriented_set(),
            vec![d.a(), d.b(), d.element(2, 1, 0), d.element(2, 3, 1)]
        );
        assert_eq!(f.connection_set().len(), 8);
        assert_eq!(excluded_k(5, 2), 4);
        assert!(FamilyParams::gamma4k(5, 4, None).is_err());
        assert!(FamilyParams::gamma4k(7, 0, None).is_err());
        assert_eq!(canonical_lambda(13).unwrap(), 5);
        assert_eq!(f.admissible_k(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn p5_classes() {
        let c = family_iso_classes(&FamilyParams::gamma4k(5, 0, None).unwrap());
        assert_eq!(c.classes, vec![vec![0, 3], vec![1, 2]]);
    }
}
