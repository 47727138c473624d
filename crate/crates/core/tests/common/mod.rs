#![allow(dead_code)]

use std::sync::Arc;

use fixedbitset::FixedBitSet;
use proptest::prelude::*;
use starperm::{FiniteAlgebra, Homomorphism, Relation, Signature, Symbol};

/// Random algebra on at most `max_size` elements with an optional constant,
/// one unary and one binary operation.
pub fn arb_algebra(max_size: usize) -> impl Strategy<Value = FiniteAlgebra> {
    (1..=max_size, any::<bool>()).prop_flat_map(|(n, with_const)| {
        let constant = proptest::collection::vec(0..n, if with_const { 1 } else { 0 });
        (constant, proptest::collection::vec(0..n, n), proptest::collection::vec(0..n, n * n)).prop_map(
            move |(c, unary, binary)| {
                let mut symbols = Vec::new();
                let mut tables = Vec::new();
                if let Some(&c) = c.first() {
                    symbols.push(Symbol::new("c", 0));
                    tables.push(vec![c]);
                }
                symbols.push(Symbol::new("u", 1));
                tables.push(unary);
                symbols.push(Symbol::new("b", 2));
                tables.push(binary);
                FiniteAlgebra::new("random", Signature::new(symbols).unwrap(), n, tables).unwrap()
            },
        )
    })
}

/// Every map from an `n`-set to an `m`-set, as value vectors.
pub fn all_maps(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..m).map(move |v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect();
    }
    out
}

/// Homomorphisms `a → b` found by filtering all maps.
pub fn all_homs(a: &Arc<FiniteAlgebra>, b: &Arc<FiniteAlgebra>) -> Vec<Homomorphism> {
    all_maps(a.size(), b.size())
        .into_iter()
        .filter_map(|m| Homomorphism::new(a.clone(), b.clone(), m).ok())
        .collect()
}

/// Every relation on `a`, compatible or not, by bit pattern.
pub fn all_relations(a: &Arc<FiniteAlgebra>) -> Vec<Relation> {
    let n2 = a.size() * a.size();
    (0..1usize << n2)
        .map(|mask| {
            let mut bits = FixedBitSet::with_capacity(n2);
            for i in 0..n2 {
                if mask >> i & 1 == 1 {
                    bits.insert(i);
                }
            }
            Relation::from_bitset(a, bits).unwrap()
        })
        .collect()
}

/// Pair set by direct scan, independent of the library's set operations.
pub fn pairs(r: &Relation) -> Vec<(usize, usize)> {
    let (n, m) = (r.source().size(), r.target().size());
    (0..n)
        .flat_map(|a| (0..m).map(move |b| (a, b)))
        .filter(|&(a, b)| r.contains(a, b))
        .collect()
}

/// Compatibility by brute force over all operation applications.
pub fn compatible_oracle(r: &Relation) -> bool {
    let a = r.source();
    let ps = pairs(r);
    a.signature().symbols().iter().enumerate().all(|(s, sym)| {
        all_maps(sym.arity, ps.len()).iter().all(|choice| {
            let left: Vec<usize> = choice.iter().map(|&i| ps[i].0).collect();
            let right: Vec<usize> = choice.iter().map(|&i| ps[i].1).collect();
            r.contains(a.apply(s, &left), r.target().apply(s, &right))
        })
    })
}
