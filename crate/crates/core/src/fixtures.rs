//! Small named algebras used throughout the tests and the shipped corpus.

use crate::algebra::{direct_power, product, FiniteAlgebra, Signature, Symbol, DEFAULT_POWER_BUDGET};

fn build(name: &str, size: usize, symbols: &[(&str, usize)], f: impl Fn(usize, &[usize]) -> usize) -> FiniteAlgebra {
    let signature = Signature::new(symbols.iter().map(|&(n, a)| Symbol::new(n, a)).collect())
        .expect("fixture names are distinct");
    let mut tables = Vec::new();
    for (s, &(_, arity)) in symbols.iter().enumerate() {
        let mut table = Vec::new();
        crate::tuples::for_each(arity, size, |args| table.push(f(s, args)));
        tables.push(table);
    }
    FiniteAlgebra::new(name, signature, size, tables).expect("fixture tables are well formed")
}

/// Two-element Boolean algebra: `bot`, `top`, `and`, `or`, `not`.
pub fn bool2() -> FiniteAlgebra {
    build(
        "bool2",
        2,
        &[("bot", 0), ("top", 0), ("and", 2), ("or", 2), ("not", 1)],
        |s, a| match s {
            0 => 0,
            1 => 1,
            2 => a[0] & a[1],
            3 => a[0] | a[1],
            _ => 1 - a[0],
        },
    )
}

/// `bool2 × bool2`; the pair `(a, b)` is element `2a + b`.
pub fn bool4() -> FiniteAlgebra {
    direct_power(&bool2(), 2, DEFAULT_POWER_BUDGET)
        .expect("4 elements")
        .renamed("bool4")
}

/// Two-element Heyting algebra: `bot`, `top`, `and`, `or`, `imp`.
pub fn heyt2() -> FiniteAlgebra {
    build(
        "heyt2",
        2,
        &[("bot", 0), ("top", 0), ("and", 2), ("or", 2), ("imp", 2)],
        |s, a| match s {
            0 => 0,
            1 => 1,
            2 => a[0] & a[1],
            3 => a[0] | a[1],
            _ => (1 - a[0]) | a[1],
        },
    )
}

fn ring_zn(name: &str, n: usize) -> FiniteAlgebra {
    build(
        name,
        n,
        &[("zero", 0), ("one", 0), ("add", 2), ("mul", 2), ("neg", 1)],
        |s, a| match s {
            0 => 0,
            1 => 1 % n,
            2 => (a[0] + a[1]) % n,
            3 => (a[0] * a[1]) % n,
            _ => (n - a[0]) % n,
        },
    )
}

/// The unitary ring of integers mod 2: `zero`, `one`, `add`, `mul`, `neg`.
pub fn ring_z2() -> FiniteAlgebra {
    ring_zn("ringZ2", 2)
}

/// The unitary ring of integers mod 4.
pub fn ring_z4() -> FiniteAlgebra {
    ring_zn("ringZ4", 4)
}

/// `ringZ2 × ringZ2`; the pair `(a, b)` is element `2a + b`.
pub fn ring_z2xz2() -> FiniteAlgebra {
    let z2 = ring_z2();
    product(&[&z2, &z2], DEFAULT_POWER_BUDGET)
        .expect("4 elements")
        .renamed("ringZ2xZ2")
}

/// The group of order two: `unit`, `mul`, `inv`.
pub fn group_z2() -> FiniteAlgebra {
    build(
        "groupZ2",
        2,
        &[("unit", 0), ("mul", 2), ("inv", 1)],
        |s, a| match s {
            0 => 0,
            1 => a[0] ^ a[1],
            _ => a[0],
        },
    )
}

/// `({0,1}, max, 0)`.
pub fn monoid01() -> FiniteAlgebra {
    build("monoid01", 2, &[("zero", 0), ("max", 2)], |s, a| match s {
        0 => 0,
        _ => a[0].max(a[1]),
    })
}

/// `({0,1}, max)` without constants.
pub fn semilattice2() -> FiniteAlgebra {
    build("semilattice2", 2, &[("max", 2)], |_, a| a[0].max(a[1]))
}

/// Plain set of the given size.
pub fn set(size: usize) -> FiniteAlgebra {
    FiniteAlgebra::set(format!("set{size}"), size).expect("size is positive")
}
