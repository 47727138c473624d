mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use common::{all_homs, all_maps, arb_algebra};
use proptest::prelude::*;
use starperm::{all_congruences, direct_power, image_factorization, Congruence, FiniteAlgebra, Subset};

/// Canonical labels of every compatible partition, by filtering all label maps.
fn partition_oracle(a: &Arc<FiniteAlgebra>) -> BTreeSet<Vec<usize>> {
    let n = a.size();
    all_maps(n, n)
        .into_iter()
        .filter(|labels| {
            // restricted growth strings only
            let mut max = 0;
            labels.iter().enumerate().all(|(i, &l)| {
                let ok = if i == 0 { l == 0 } else { l <= max + 1 };
                max = max.max(l);
                ok
            })
        })
        .filter(|labels| {
            a.signature().symbols().iter().enumerate().all(|(s, sym)| {
                all_maps(sym.arity, n).iter().all(|x| {
                    all_maps(sym.arity, n).iter().all(|y| {
                        let related = x.iter().zip(y).all(|(&u, &v)| labels[u] == labels[v]);
                        !related || labels[a.apply(s, x)] == labels[a.apply(s, y)]
                    })
                })
            })
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn closure_is_extensive_and_idempotent(a in arb_algebra(4), seed in proptest::collection::vec(0usize..4, 0..4)) {
        let seed: Vec<usize> = seed.into_iter().filter(|&x| x < a.size()).collect();
        let closed = a.subalgebra_closure(&seed).unwrap();
        for &x in &seed {
            prop_assert!(closed.contains(x));
        }
        prop_assert!(a.is_closed(&closed).is_ok());
        prop_assert_eq!(a.subalgebra_closure(closed.elements()).unwrap(), closed.clone());
        // monotone in the seed
        let mut bigger = seed.clone();
        bigger.push(0);
        prop_assert!(closed.is_subset(&a.subalgebra_closure(&bigger).unwrap()));
    }

    #[test]
    fn congruences_match_partition_oracle(a in arb_algebra(4)) {
        let a = Arc::new(a);
        let found: BTreeSet<Vec<usize>> =
            all_congruences(&a, 8).unwrap().iter().map(|c| c.labels().to_vec()).collect();
        prop_assert_eq!(found, partition_oracle(&a));
    }

    #[test]
    fn congruence_preimages_are_congruences(a in arb_algebra(3), b in arb_algebra(3)) {
        let a = Arc::new(a);
        let b = Arc::new(b);
        for f in all_homs(&a, &b).into_iter().chain(all_homs(&a, &a)) {
            for theta in all_congruences(f.codomain(), 8).unwrap() {
                let pre = theta.preimage(&f).unwrap();
                for x in 0..a.size() {
                    for y in 0..a.size() {
                        prop_assert_eq!(pre.related(x, y), theta.related(f.apply(x), f.apply(y)));
                    }
                }
                prop_assert!(Congruence::from_labels(a.clone(), pre.labels()).is_ok());
            }
        }
    }

    #[test]
    fn image_factorization_recomposes(a in arb_algebra(3)) {
        let a = Arc::new(a);
        let sq = Arc::new(direct_power(&a, 2, 64).unwrap());
        for f in all_homs(&a, &a) {
            let fac = image_factorization(&f).unwrap();
            prop_assert!(fac.surjection.is_surjective());
            prop_assert!(fac.inclusion.is_injective());
            let recomposed = fac.surjection.then(&fac.inclusion).unwrap();
            prop_assert_eq!(recomposed.map(), f.map());
            prop_assert!(f.codomain().is_closed(&f.image()).is_ok());
        }
        let n = a.size();
        let diag: Vec<usize> = (0..n).map(|x| x * n + x).collect();
        let f = starperm::Homomorphism::new(a.clone(), sq, diag).unwrap();
        let fac = image_factorization(&f).unwrap();
        prop_assert_eq!(fac.image.size(), n);
    }

    #[test]
    fn homomorphisms_preserve_constants_subalgebra(a in arb_algebra(3), b in arb_algebra(3)) {
        let a = Arc::new(a);
        let b = Arc::new(b);
        for f in all_homs(&a, &b) {
            let image: Vec<usize> = a.constants_subalgebra().elements().iter().map(|&x| f.apply(x)).collect();
            let target = b.constants_subalgebra();
            prop_assert!(image.iter().all(|&y| target.contains(y)));
        }
    }
}

#[test]
fn closure_of_empty_seed_on_a_set_is_empty() {
    let s = FiniteAlgebra::set("s", 3).unwrap();
    assert_eq!(s.subalgebra_closure(&[]).unwrap(), Subset::empty(3));
}
