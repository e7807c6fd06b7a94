mod common;

use common::cyclic_cayley_corpus;
use hatp3::autgroup::{aut_stabilizer, cayley_isomorphic};
use hatp3::classify::{graph_profile, TransitivityClass};
use hatp3::families::{canonical_lambda, excluded_k, family_iso_classes, FamilyParams};
use hatp3::modular::pow_mod;

/// Units of multiplicative order exactly `j` modulo `m`.
fn units_of_order(j: u64, m: u64) -> Vec<u32> {
    (2..m)
        .filter(|&u| pow_mod(u, j, m) == 1 && (1..j).all(|d| pow_mod(u, d, m) != 1))
        .map(|u| u as u32)
        .collect()
}

#[test]
fn gamma4_is_independent_of_lambda() {
    for p in [5u32, 13] {
        let lambda = canonical_lambda(p).unwrap();
        let other = p - lambda;
        for k in 0..p {
            if k == excluded_k(p, lambda) {
                assert!(FamilyParams::gamma4k(p, k, Some(lambda)).is_err());
                continue;
            }
            let r = FamilyParams::gamma4k(p, k, Some(lambda)).unwrap();
            let s = (k + p - lambda) % p;
            let rbar = FamilyParams::gamma4k(p, s, Some(other)).unwrap();
            let w = cayley_isomorphic(r.descriptor(), &r.connection_set(), &rbar.connection_set()).unwrap();
            assert!(w.is_some(), "p={p} k={k} s={s}");
        }
    }
}

#[test]
fn gamma_jk_is_independent_of_e() {
    for (p, j) in [(5u32, 4u32), (7, 3), (13, 3), (13, 4)] {
        let m = (p * p) as u64;
        let units = units_of_order(j as u64, m);
        // phi(3) = phi(4) = 2
        assert_eq!(units.len(), 2, "p={p} j={j}");
        let base = FamilyParams::gamma_jk(p, j, 1, None).unwrap();
        for &e in &units {
            let alt = FamilyParams::gamma_jk(p, j, 1, Some(e)).unwrap();
            for k in alt.admissible_k() {
                let g = alt.with_k(k).unwrap();
                let hit = base.admissible_k().into_iter().any(|l| {
                    let h = base.with_k(l).unwrap();
                    cayley_isomorphic(g.descriptor(), &g.connection_set(), &h.connection_set())
                        .unwrap()
                        .is_some()
                });
                assert!(hit, "p={p} j={j} e={e} k={k}");
            }
        }
    }
}

#[test]
fn gamma_jk_class_count() {
    for (p, j) in [(5u32, 4u32), (7, 3), (7, 2), (13, 3)] {
        let c = family_iso_classes(&FamilyParams::gamma_jk(p, j, 1, None).unwrap());
        assert_eq!(c.classes.len() as u32, (p - 1) / 2, "p={p} j={j}");
    }
}

#[test]
fn tetravalent_family_is_half_arc_transitive_at_p7() {
    for k in 1..7 {
        let g = FamilyParams::gamma_jk(7, 2, k, None).unwrap().graph();
        let (profile, aut) = graph_profile(g.graph()).unwrap();
        assert_eq!(profile.class, TransitivityClass::HalfArcTransitive, "k={k}");
        // normal: the full group is the regular translations times Aut(G, S)
        let stab = aut_stabilizer(g.descriptor(), g.connection_set()).unwrap();
        assert_eq!(aut.order(), 343 * stab.order as u128, "k={k}");
    }
}

#[test]
fn edge_transitive_cyclic_cayley_graphs_are_arc_transitive() {
    let corpus = cyclic_cayley_corpus(16);
    let mut edge_transitive = 0;
    for (name, g) in &corpus {
        let (profile, _) = graph_profile(g).unwrap();
        assert_eq!(profile.vertex_orbits, 1, "{name}");
        if profile.edge_orbits == 1 {
            edge_transitive += 1;
            assert_eq!(profile.arc_orbits, 1, "{name}");
        }
        assert_ne!(profile.class, TransitivityClass::HalfArcTransitive, "{name}");
    }
    assert!(edge_transitive > 20);
}
