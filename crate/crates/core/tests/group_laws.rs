//! Commutator identities of class-2 groups on random triples of G1(p) and G2(p).

use hatp3::pgroup::{GroupDescriptor, GroupElement, GroupKind};
use proptest::prelude::*;

const PRIMES: [u32; 4] = [3, 5, 7, 13];

fn descriptors() -> Vec<GroupDescriptor> {
    PRIMES
        .iter()
        .flat_map(|&p| [GroupDescriptor::g1(p).unwrap(), GroupDescriptor::g2(p).unwrap()])
        .collect()
}

fn pick(d: &GroupDescriptor, (i, j, k): (i64, i64, i64)) -> GroupElement {
    match d.kind {
        GroupKind::G1 => d.element(i, j, 0),
        GroupKind::G2 => d.element(i, j, k),
    }
}

fn binom2(n: i64) -> i64 {
    n * (n - 1) / 2
}

fn exps() -> impl Strategy<Value = (i64, i64, i64)> {
    (0..1000i64, 0..1000i64, 0..1000i64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    // each case exercises every (group, p) pair, so every pair sees 10^4 triples
    #[test]
    fn commutator_identities(x in exps(), y in exps(), z in exps(), n in -60i64..60) {
        for d in descriptors() {
            let (x, y, z) = (pick(&d, x), pick(&d, y), pick(&d, z));
            prop_assert_eq!(x.commutator(&y), y.commutator(&x).inverse());
            prop_assert_eq!((x * y).commutator(&z), x.commutator(&z).conjugate_by(&y) * y.commutator(&z));
            prop_assert_eq!(x.commutator(&(y * z)), x.commutator(&z) * x.commutator(&y).conjugate_by(&z));
            let c = x.commutator(&y);
            // derived subgroup is central in both groups
            prop_assert_eq!(c * z, z * c);
            prop_assert_eq!((x * y).pow(n), x.pow(n) * y.pow(n) * y.commutator(&x).pow(binom2(n)));
        }
    }

    #[test]
    fn powers_and_inverses(x in exps(), m in -200i64..200, n in -200i64..200) {
        for d in descriptors() {
            let x = pick(&d, x);
            prop_assert_eq!(x.pow(m) * x.pow(n), x.pow(m + n));
            prop_assert_eq!(x.pow(m).pow(n), x.pow(m * n));
            prop_assert!(x.pow(x.order() as i64).is_identity());
            prop_assert_eq!(x.inverse().inverse(), x);
        }
    }
}
