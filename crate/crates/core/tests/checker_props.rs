mod common;

use std::sync::Arc;

use common::{all_homs, all_relations, arb_algebra, pairs};
use proptest::prelude::*;
use starperm::checkers::{
    audit_algebra, check_star_permutes, enumerate_reflexive_compatible, graph_left_star_symmetric,
    is_left_star_symmetric, is_star_symmetric, Budgets, GraphVerdict, Verdict,
};
use starperm::{graph_image, null_class, opposite, relation_predicates, star, FiniteAlgebra, Homomorphism, IdealContext};

fn set(n: usize) -> Arc<FiniteAlgebra> {
    Arc::new(FiniteAlgebra::set(format!("set{n}"), n).unwrap())
}

fn contexts_for(a: &FiniteAlgebra) -> Vec<IdealContext> {
    let mut out = vec![IdealContext::Total];
    out.extend((0..a.size()).map(IdealContext::pointed_at).filter(|c| c.validate(a).is_ok()));
    if a.signature().has_constants() {
        out.push(IdealContext::ProtoPointed);
    }
    out
}

/// Reflexive compatible relations by filtering every relation.
fn reflexive_compatible_oracle(a: &Arc<FiniteAlgebra>) -> Vec<Vec<(usize, usize)>> {
    let mut out: Vec<Vec<(usize, usize)>> = all_relations(a)
        .into_iter()
        .filter(|r| common::compatible_oracle(r) && (0..a.size()).all(|x| r.contains(x, x)))
        .map(|r| pairs(&r))
        .collect();
    out.sort();
    out
}

#[test]
fn total_context_symmetry_is_plain_symmetry() {
    for n in 1..=3 {
        for r in all_relations(&set(n)) {
            let symmetric = relation_predicates(&r).unwrap().symmetric;
            assert_eq!(is_left_star_symmetric(&IdealContext::Total, &r).unwrap().holds, symmetric);
            assert_eq!(is_star_symmetric(&IdealContext::Total, &r).unwrap().holds, symmetric);
        }
    }
}

#[test]
fn star_symmetry_unfolds_to_equal_stars() {
    for n in 1..=3 {
        let a = set(n);
        for ctx in contexts_for(&a) {
            for r in all_relations(&a) {
                let v = is_star_symmetric(&ctx, &r).unwrap();
                let lhs = star(&ctx, &r).unwrap();
                let rhs = star(&ctx, &opposite(&r)).unwrap();
                assert_eq!(v.holds, lhs == rhs, "{ctx} {r}");
                assert_eq!(v.holds, v.witness.is_none());
                if let Some((x, y)) = v.witness {
                    let side = if v.in_opposite { opposite(&r) } else { r.clone() };
                    assert!(null_class(&ctx, &a).unwrap().contains(x));
                    assert!(side.contains(x, y) && !side.contains(y, x));
                }
            }
        }
    }
}

#[test]
fn graph_soundness_on_small_sets() {
    for g in 1..=3 {
        for x in 1..=3 {
            let (ga, xa) = (set(g), set(x));
            let maps = all_homs(&ga, &xa);
            for ctx in contexts_for(&xa) {
                for g0 in &maps {
                    for g1 in &maps {
                        let v = graph_left_star_symmetric(&ctx, g0, g1, 1 << 16).unwrap();
                        let image = graph_image(g0, g1).unwrap();
                        let rel = is_left_star_symmetric(&ctx, &image).unwrap().holds;
                        if let GraphVerdict::Symmetric { sigma } = &v {
                            assert!(rel, "{ctx} g0={:?} g1={:?}", g0.map(), g1.map());
                            for &(t, u) in sigma {
                                assert_eq!(g1.apply(u), g0.apply(t));
                                assert_eq!(g0.apply(u), g1.apply(t));
                            }
                        }
                        // on sets any choice of images is a homomorphism, so both checks agree
                        assert_eq!(v.verdict() == Verdict::Pass, rel);
                    }
                }
            }
        }
    }
}

#[test]
fn enumeration_matches_filter_on_sets() {
    for n in 1..=3 {
        let a = set(n);
        let found: Vec<Vec<(usize, usize)>> = enumerate_reflexive_compatible(&a, &Budgets::default())
            .unwrap()
            .relations
            .iter()
            .map(pairs)
            .collect();
        assert_eq!(found, reflexive_compatible_oracle(&a));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(80))]

    #[test]
    fn enumeration_matches_filter(a in arb_algebra(3)) {
        let a = Arc::new(a);
        let e = enumerate_reflexive_compatible(&a, &Budgets::default()).unwrap();
        prop_assert!(!e.truncated);
        let found: Vec<Vec<(usize, usize)>> = e.relations.iter().map(pairs).collect();
        prop_assert_eq!(found, reflexive_compatible_oracle(&a));
    }

    #[test]
    fn graph_soundness_on_random_algebras(a in arb_algebra(3)) {
        let a = Arc::new(a);
        let homs = all_homs(&a, &a);
        for ctx in contexts_for(&a) {
            for g0 in &homs {
                for g1 in &homs {
                    if let GraphVerdict::Symmetric { .. } = graph_left_star_symmetric(&ctx, g0, g1, 1 << 16).unwrap() {
                        prop_assert!(is_left_star_symmetric(&ctx, &graph_image(g0, g1).unwrap()).unwrap().holds);
                    }
                }
            }
        }
    }

    #[test]
    fn jointly_monic_graphs_match_relations(a in arb_algebra(2)) {
        let a = Arc::new(a);
        let sq = starperm::product(&[&a, &a], 64).unwrap();
        for r in enumerate_reflexive_compatible(&a, &Budgets::default()).unwrap().relations {
            let members: Vec<usize> = r.bits().ones().collect();
            let subset = starperm::Subset::from_elements(sq.size(), members.iter().copied()).unwrap();
            let g = Arc::new(sq.restrict("R", &subset).unwrap());
            let n = a.size();
            let g0 = Homomorphism::new(g.clone(), a.clone(), members.iter().map(|p| p / n).collect()).unwrap();
            let g1 = Homomorphism::new(g.clone(), a.clone(), members.iter().map(|p| p % n).collect()).unwrap();
            for ctx in contexts_for(&a) {
                let graph = graph_left_star_symmetric(&ctx, &g0, &g1, 1 << 16).unwrap().verdict();
                let rel = is_left_star_symmetric(&ctx, &r).unwrap().holds;
                prop_assert_eq!(graph == Verdict::Pass, rel);
            }
        }
    }

    #[test]
    fn permutation_is_symmetric_in_its_arguments(a in arb_algebra(3)) {
        let a = Arc::new(a);
        let rels = enumerate_reflexive_compatible(&a, &Budgets::default()).unwrap().relations;
        for ctx in contexts_for(&a) {
            for r in rels.iter().take(12) {
                for s in rels.iter().take(12) {
                    let v = check_star_permutes(&ctx, r, s).unwrap();
                    let w = check_star_permutes(&ctx, s, r).unwrap();
                    prop_assert_eq!(&v.rs, &w.sr);
                    prop_assert_eq!(&v.sr, &w.rs);
                    prop_assert_eq!(v.holds, w.holds);
                    prop_assert_eq!(v.holds, v.rs == v.sr);
                }
            }
        }
    }

    #[test]
    fn audits_are_consistent(a in arb_algebra(3)) {
        let a = Arc::new(a);
        for ctx in contexts_for(&a) {
            let report = audit_algebra(&ctx, &a, &Budgets::default()).unwrap();
            let [c1, c2, c3, c4] = &report.conditions[..] else { panic!("four conditions") };
            if c4.verdict == Verdict::Pass {
                prop_assert_eq!(c3.verdict, Verdict::Pass);
            }
            // every reported counterexample fails when re-checked
            for c in [c1, c2, c3, c4] {
                prop_assert_eq!(c.verdict == Verdict::Fail, !c.counterexamples.is_empty());
            }
            for cx in &c3.counterexamples {
                if let starperm::checkers::Counterexample::NotSymmetric { relation, .. } = cx {
                    prop_assert!(!is_left_star_symmetric(&ctx, relation).unwrap().holds);
                }
            }
            for cx in c1.counterexamples.iter().chain(&c2.counterexamples) {
                if let starperm::checkers::Counterexample::NotPermuting { r, s, .. } = cx {
                    prop_assert!(!check_star_permutes(&ctx, r, s).unwrap().holds);
                }
            }
            // congruences and compatible equivalences coincide
            prop_assert_eq!(c1.examined, c2.examined);
        }
    }
}
