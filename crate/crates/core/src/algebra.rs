//! Finite algebras over arbitrary signatures.
//!
//! Carriers are `{0, .., n-1}`. An operation of arity `k` is stored as a table
//! of length `n^k` indexed by the argument tuple read as a base-`n` number with
//! the leftmost argument most significant.

use std::collections::HashSet;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::partition::UnionFind;
use crate::tuples;

/// Largest operation table the crate will materialize.
pub const MAX_TABLE_ENTRIES: usize = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Symbol {
    pub name: String,
    pub arity: usize,
}

impl Symbol {
    pub fn new(name: impl Into<String>, arity: usize) -> Self {
        Self {
            name: name.into(),
            arity,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Signature {
    symbols: Vec<Symbol>,
}

impl Signature {
    pub fn new(symbols: Vec<Symbol>) -> Result<Self> {
        let mut seen = HashSet::new();
        for s in &symbols {
            if !seen.insert(s.name.as_str()) {
                return Err(Error::DuplicateSymbol(s.name.clone()));
            }
        }
        Ok(Self { symbols })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s.name == name)
    }

    /// Indices of the arity-0 symbols.
    pub fn constants(&self) -> impl Iterator<Item = usize> + '_ {
        self.symbols
            .iter()
            .enumerate()
            .filter(|(_, s)| s.arity == 0)
            .map(|(i, _)| i)
    }

    pub fn has_constants(&self) -> bool {
        self.constants().next().is_some()
    }
}

/// A set of carrier elements, kept both as a sorted list and a membership mask.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subset {
    mask: Vec<bool>,
    members: Vec<usize>,
}

impl Subset {
    pub fn empty(universe: usize) -> Self {
        Self {
            mask: vec![false; universe],
            members: Vec::new(),
        }
    }

    pub fn full(universe: usize) -> Self {
        Self {
            mask: vec![true; universe],
            members: (0..universe).collect(),
        }
    }

    pub fn from_elements(universe: usize, elements: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut mask = vec![false; universe];
        for e in elements {
            if e >= universe {
                return Err(Error::OutOfRange {
                    element: e,
                    size: universe,
                });
            }
            mask[e] = true;
        }
        Ok(Self::from_mask(mask))
    }

    pub fn from_mask(mask: Vec<bool>) -> Self {
        let members = mask
            .iter()
            .enumerate()
            .filter_map(|(i, &m)| m.then_some(i))
            .collect();
        Self { mask, members }
    }

    pub fn universe(&self) -> usize {
        self.mask.len()
    }

    pub fn contains(&self, e: usize) -> bool {
        self.mask.get(e).copied().unwrap_or(false)
    }

    pub fn elements(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_subset(&self, other: &Subset) -> bool {
        self.members.iter().all(|&e| other.contains(e))
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Debug, Clone)]
pub struct FiniteAlgebra {
    name: String,
    signature: Signature,
    size: usize,
    tables: Vec<Vec<usize>>,
    constants_closure: OnceLock<Subset>,
}

/// Names are labels only; two algebras are equal when their signatures and tables agree.
impl PartialEq for FiniteAlgebra {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other)
            || (self.size == other.size
                && self.signature == other.signature
                && self.tables == other.tables)
    }
}

impl Eq for FiniteAlgebra {}

impl FiniteAlgebra {
    pub fn new(
        name: impl Into<String>,
        signature: Signature,
        size: usize,
        tables: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if size == 0 {
            return Err(Error::EmptyCarrier);
        }
        if tables.len() != signature.len() {
            return Err(Error::SignatureMismatch);
        }
        for (sym, table) in signature.symbols().iter().zip(&tables) {
            let expected = table_len(size, sym.arity)?;
            if table.len() != expected {
                return Err(Error::TableLength {
                    symbol: sym.name.clone(),
                    expected,
                    found: table.len(),
                });
            }
            if let Some(&bad) = table.iter().find(|&&v| v >= size) {
                return Err(Error::OutOfRange { element: bad, size });
            }
        }
        Ok(Self {
            name: name.into(),
            signature,
            size,
            tables,
            constants_closure: OnceLock::new(),
        })
    }

    /// A plain set: empty signature.
    pub fn set(name: impl Into<String>, size: usize) -> Result<Self> {
        Self::new(name, Signature::empty(), size, Vec::new())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn table(&self, symbol: usize) -> &[usize] {
        &self.tables[symbol]
    }

    pub fn arity(&self, symbol: usize) -> usize {
        self.signature.symbols()[symbol].arity
    }

    pub fn apply(&self, symbol: usize, args: &[usize]) -> usize {
        self.tables[symbol][tuples::encode(args, self.size)]
    }

    /// Value of the constant `symbol` (arity 0).
    pub fn constant(&self, symbol: usize) -> usize {
        self.tables[symbol][0]
    }

    pub fn constant_named(&self, name: &str) -> Option<usize> {
        let i = self.signature.index_of(name)?;
        (self.arity(i) == 0).then(|| self.constant(i))
    }

    pub fn check_element(&self, e: usize) -> Result<()> {
        if e < self.size {
            Ok(())
        } else {
            Err(Error::OutOfRange {
                element: e,
                size: self.size,
            })
        }
    }

    pub fn same_signature(&self, other: &FiniteAlgebra) -> bool {
        self.signature == other.signature
    }

    /// Least subset containing `seed` and the constants, closed under every operation.
    pub fn subalgebra_closure(&self, seed: &[usize]) -> Result<Subset> {
        let mut state = Closure::new(self.size);
        for &e in seed {
            self.check_element(e)?;
            state.push(e);
        }
        for c in self.signature.constants() {
            state.push(self.constant(c));
        }
        Ok(self.saturate(state, 0))
    }

    /// Closure of `closed ∪ extra`, where `closed` is already a subalgebra.
    ///
    /// Only combinations involving at least one new element are evaluated.
    pub fn extend_closed(&self, closed: &Subset, extra: &[usize]) -> Result<Subset> {
        let mut state = Closure::new(self.size);
        for &e in closed.elements() {
            state.push(e);
        }
        let lo = state.members.len();
        for &e in extra {
            self.check_element(e)?;
            state.push(e);
        }
        Ok(self.saturate(state, lo))
    }

    /// Semi-naive fixpoint: `state.members[..lo]` is assumed closed.
    fn saturate(&self, mut state: Closure, mut lo: usize) -> Subset {
        let mut args = Vec::new();
        let mut snapshot = Vec::new();
        loop {
            let hi = state.members.len();
            if lo == hi {
                break;
            }
            snapshot.clear();
            snapshot.extend_from_slice(&state.members[..hi]);
            for (s, sym) in self.signature.symbols().iter().enumerate() {
                if sym.arity == 0 {
                    continue;
                }
                tuples::for_each_touching(sym.arity, lo, hi, |idx| {
                    args.clear();
                    args.extend(idx.iter().map(|&i| snapshot[i]));
                    state.push(self.apply(s, &args));
                });
            }
            lo = hi;
        }
        Subset::from_mask(state.mask)
    }

    /// The subalgebra generated by the constants; cached after the first call.
    pub fn constants_subalgebra(&self) -> &Subset {
        self.constants_closure.get_or_init(|| {
            self.subalgebra_closure(&[])
                .expect("empty seed is always in range")
        })
    }

    /// Checks that `subset` is closed under all operations; returns the first offending symbol.
    pub fn is_closed(&self, subset: &Subset) -> std::result::Result<(), String> {
        for (s, sym) in self.signature.symbols().iter().enumerate() {
            let members = subset.elements();
            let mut bad = false;
            let mut args = Vec::with_capacity(sym.arity);
            tuples::for_each(sym.arity, members.len(), |idx| {
                if bad {
                    return;
                }
                args.clear();
                args.extend(idx.iter().map(|&i| members[i]));
                if !subset.contains(self.apply(s, &args)) {
                    bad = true;
                }
            });
            if bad {
                return Err(sym.name.clone());
            }
        }
        Ok(())
    }

    /// The subalgebra on `subset`, re-indexed in increasing order of its members.
    pub fn restrict(&self, name: impl Into<String>, subset: &Subset) -> Result<FiniteAlgebra> {
        if subset.universe() != self.size {
            return Err(Error::CarrierMismatch("subset universe differs from carrier"));
        }
        self.is_closed(subset).map_err(Error::NotClosed)?;
        let members = subset.elements();
        let mut position = vec![usize::MAX; self.size];
        for (i, &e) in members.iter().enumerate() {
            position[e] = i;
        }
        let m = members.len();
        let mut tables = Vec::with_capacity(self.signature.len());
        for (s, sym) in self.signature.symbols().iter().enumerate() {
            let mut table = Vec::with_capacity(table_len(m, sym.arity)?);
            let mut args = Vec::with_capacity(sym.arity);
            tuples::for_each(sym.arity, m, |idx| {
                args.clear();
                args.extend(idx.iter().map(|&i| members[i]));
                table.push(position[self.apply(s, &args)]);
            });
            tables.push(table);
        }
        FiniteAlgebra::new(name, self.signature.clone(), m, tables)
    }
}

struct Closure {
    mask: Vec<bool>,
    members: Vec<usize>,
}

impl Closure {
    fn new(size: usize) -> Self {
        Self {
            mask: vec![false; size],
            members: Vec::new(),
        }
    }

    fn push(&mut self, e: usize) {
        if !self.mask[e] {
            self.mask[e] = true;
            self.members.push(e);
        }
    }
}

pub(crate) fn table_len(size: usize, arity: usize) -> Result<usize> {
    match tuples::checked_pow(size, arity) {
        Some(len) if len <= MAX_TABLE_ENTRIES => Ok(len),
        _ => Err(Error::Budget {
            what: "operation table",
            needed: tuples::checked_pow(size, arity).unwrap_or(usize::MAX),
            limit: MAX_TABLE_ENTRIES,
        }),
    }
}

/// Default ceiling on the carrier size produced by [`direct_power`] and [`product`].
pub const DEFAULT_POWER_BUDGET: usize = 4096;

/// Product of algebras over a common signature, carrier encoded lexicographically
/// with the first factor most significant.
pub fn product(factors: &[&FiniteAlgebra], budget: usize) -> Result<FiniteAlgebra> {
    let first = factors
        .first()
        .ok_or(Error::CarrierMismatch("product of no factors"))?;
    if factors.iter().any(|f| !f.same_signature(first)) {
        return Err(Error::SignatureMismatch);
    }
    let size = factors
        .iter()
        .try_fold(1usize, |acc, f| acc.checked_mul(f.size()))
        .filter(|&s| s <= budget)
        .ok_or_else(|| Error::Budget {
            what: "product carrier",
            needed: factors
                .iter()
                .map(|f| f.size())
                .fold(1usize, |a, b| a.saturating_mul(b)),
            limit: budget,
        })?;
    let sizes: Vec<usize> = factors.iter().map(|f| f.size()).collect();
    let decode = |mut x: usize, out: &mut [usize]| {
        for (slot, &n) in out.iter_mut().zip(&sizes).rev() {
            *slot = x % n;
            x /= n;
        }
    };
    let encode = |coords: &[usize]| coords.iter().zip(&sizes).fold(0, |acc, (&c, &n)| acc * n + c);

    let k = factors.len();
    let mut tables = Vec::with_capacity(first.signature().len());
    for (s, sym) in first.signature().symbols().iter().enumerate() {
        let len = table_len(size, sym.arity)?;
        let mut table = Vec::with_capacity(len);
        // coords[j][i]: coordinate i of argument j
        let mut coords = vec![vec![0; k]; sym.arity];
        let mut column = vec![0; sym.arity];
        let mut out = vec![0; k];
        tuples::for_each(sym.arity, size, |idx| {
            for (j, &x) in idx.iter().enumerate() {
                decode(x, &mut coords[j]);
            }
            for (i, factor) in factors.iter().enumerate() {
                for (j, c) in coords.iter().enumerate() {
                    column[j] = c[i];
                }
                out[i] = factor.apply(s, &column);
            }
            table.push(encode(&out));
        });
        tables.push(table);
    }
    let name = factors
        .iter()
        .map(|f| f.name())
        .collect::<Vec<_>>()
        .join("x");
    FiniteAlgebra::new(name, first.signature().clone(), size, tables)
}

/// `A^k` with coordinatewise operations.
pub fn direct_power(a: &FiniteAlgebra, k: usize, budget: usize) -> Result<FiniteAlgebra> {
    if k == 0 {
        return Err(Error::Budget {
            what: "power exponent",
            needed: 0,
            limit: 1,
        });
    }
    let factors = vec![a; k];
    let mut p = product(&factors, budget)?;
    p.name = if k == 1 {
        a.name().to_string()
    } else {
        format!("{}^{}", a.name(), k)
    };
    Ok(p)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homomorphism {
    domain: Arc<FiniteAlgebra>,
    codomain: Arc<FiniteAlgebra>,
    map: Vec<usize>,
}

impl Homomorphism {
    /// Validates `map` against every operation table.
    pub fn new(
        domain: Arc<FiniteAlgebra>,
        codomain: Arc<FiniteAlgebra>,
        map: Vec<usize>,
    ) -> Result<Self> {
        check_homomorphism(&domain, &codomain, &map)?;
        Ok(Self {
            domain,
            codomain,
            map,
        })
    }

    pub fn identity(a: Arc<FiniteAlgebra>) -> Self {
        let map = (0..a.size()).collect();
        Self {
            domain: a.clone(),
            codomain: a,
            map,
        }
    }

    pub fn domain(&self) -> &Arc<FiniteAlgebra> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<FiniteAlgebra> {
        &self.codomain
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// `other ∘ self`: first `self`, then `other`.
    pub fn then(&self, other: &Homomorphism) -> Result<Homomorphism> {
        if *self.codomain != *other.domain {
            return Err(Error::CarrierMismatch("codomain and domain differ"));
        }
        Ok(Homomorphism {
            domain: self.domain.clone(),
            codomain: other.codomain.clone(),
            map: self.map.iter().map(|&x| other.map[x]).collect(),
        })
    }

    pub fn image(&self) -> Subset {
        let mut mask = vec![false; self.codomain.size()];
        for &y in &self.map {
            mask[y] = true;
        }
        Subset::from_mask(mask)
    }

    pub fn is_injective(&self) -> bool {
        self.image().len() == self.map.len()
    }

    pub fn is_surjective(&self) -> bool {
        self.image().len() == self.codomain.size()
    }

    /// Elements of the domain mapped into `target`.
    pub fn preimage(&self, target: &Subset) -> Subset {
        Subset::from_mask(self.map.iter().map(|&y| target.contains(y)).collect())
    }
}

/// Validates a candidate map; the error names the first symbol and argument
/// tuple where commutation fails.
pub fn check_homomorphism(a: &FiniteAlgebra, b: &FiniteAlgebra, map: &[usize]) -> Result<()> {
    if map.len() != a.size() {
        return Err(Error::MapLength {
            expected: a.size(),
            found: map.len(),
        });
    }
    for &y in map {
        b.check_element(y)?;
    }
    if !a.same_signature(b) {
        return Err(Error::SignatureMismatch);
    }
    let mut image = Vec::new();
    for (s, sym) in a.signature().symbols().iter().enumerate() {
        let mut failure = None;
        tuples::for_each(sym.arity, a.size(), |args| {
            if failure.is_some() {
                return;
            }
            image.clear();
            image.extend(args.iter().map(|&x| map[x]));
            if map[a.apply(s, args)] != b.apply(s, &image) {
                failure = Some(args.to_vec());
            }
        });
        if let Some(args) = failure {
            return Err(Error::NotHomomorphism {
                symbol: sym.name.clone(),
                args,
            });
        }
    }
    Ok(())
}

/// Homomorphisms `a → b` in lexicographic order of their maps, stopping after
/// `limit` of them. The flag is false when the limit cut the search short.
pub fn homomorphisms(a: &Arc<FiniteAlgebra>, b: &Arc<FiniteAlgebra>, limit: usize) -> Result<(Vec<Homomorphism>, bool)> {
    if !a.same_signature(b) {
        return Err(Error::SignatureMismatch);
    }
    let n = a.size();
    // constraints[p]: (symbol, arguments, result) with every element at most p
    let mut constraints: Vec<Vec<(usize, Vec<usize>, usize)>> = vec![Vec::new(); n];
    for (s, sym) in a.signature().symbols().iter().enumerate() {
        tuples::for_each(sym.arity, n, |args| {
            let result = a.apply(s, args);
            let last = args.iter().copied().chain([result]).max().expect("result");
            constraints[last].push((s, args.to_vec(), result));
        });
    }
    let mut found = Vec::new();
    let mut map = vec![0usize; n];
    let mut image = Vec::new();
    let mut p = 0usize;
    let mut next = vec![0usize; n];
    loop {
        if p == n {
            if found.len() == limit {
                return Ok((found, false));
            }
            found.push(Homomorphism {
                domain: a.clone(),
                codomain: b.clone(),
                map: map.clone(),
            });
            p -= 1;
            continue;
        }
        let mut placed = false;
        while next[p] < b.size() {
            map[p] = next[p];
            next[p] += 1;
            let ok = constraints[p].iter().all(|(s, args, result)| {
                image.clear();
                image.extend(args.iter().map(|&x| map[x]));
                b.apply(*s, &image) == map[*result]
            });
            if ok {
                placed = true;
                break;
            }
        }
        if placed {
            p += 1;
            continue;
        }
        next[p] = 0;
        if p == 0 {
            return Ok((found, true));
        }
        p -= 1;
    }
}

/// `f = inclusion ∘ surjection` through the image of `f`.
#[derive(Debug, Clone)]
pub struct ImageFactorization {
    pub surjection: Homomorphism,
    pub image: Arc<FiniteAlgebra>,
    pub inclusion: Homomorphism,
}

pub fn image_factorization(f: &Homomorphism) -> Result<ImageFactorization> {
    let image_set = f.image();
    let name = format!("im({})", f.domain().name());
    let image = Arc::new(f.codomain().restrict(name, &image_set)?);
    let mut position = vec![usize::MAX; f.codomain().size()];
    for (i, &e) in image_set.elements().iter().enumerate() {
        position[e] = i;
    }
    let surjection = Homomorphism {
        domain: f.domain().clone(),
        codomain: image.clone(),
        map: f.map().iter().map(|&y| position[y]).collect(),
    };
    let inclusion = Homomorphism {
        domain: image.clone(),
        codomain: f.codomain().clone(),
        map: image_set.elements().to_vec(),
    };
    Ok(ImageFactorization {
        surjection,
        image,
        inclusion,
    })
}

/// A congruence, stored as canonical block labels: blocks are numbered in
/// order of their least element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Congruence {
    algebra: Arc<FiniteAlgebra>,
    labels: Vec<usize>,
}

impl Congruence {
    /// Validates that `labels` describe a compatible partition.
    pub fn from_labels(algebra: Arc<FiniteAlgebra>, labels: &[usize]) -> Result<Self> {
        if labels.len() != algebra.size() {
            return Err(Error::MapLength {
                expected: algebra.size(),
                found: labels.len(),
            });
        }
        let labels = canonical_labels(labels);
        if let Some(symbol) = partition_violation(&algebra, &labels) {
            return Err(Error::NotCompatible(symbol));
        }
        Ok(Self { algebra, labels })
    }

    pub fn algebra(&self) -> &Arc<FiniteAlgebra> {
        &self.algebra
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.labels[a] == self.labels[b]
    }

    pub fn block_count(&self) -> usize {
        self.labels.iter().max().map_or(0, |m| m + 1)
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.block_count()];
        for (e, &l) in self.labels.iter().enumerate() {
            blocks[l].push(e);
        }
        blocks
    }

    /// Join in the congruence lattice (transitive closure of the union).
    pub fn join(&self, other: &Congruence) -> Congruence {
        let mut uf = UnionFind::new(self.labels.len());
        for labels in [&self.labels, &other.labels] {
            let mut first = vec![usize::MAX; labels.len()];
            for (e, &l) in labels.iter().enumerate() {
                if first[l] == usize::MAX {
                    first[l] = e;
                } else {
                    uf.union(first[l], e);
                }
            }
        }
        Congruence {
            algebra: self.algebra.clone(),
            labels: uf.labels(),
        }
    }

    /// Preimage partition under a homomorphism into this congruence's algebra.
    pub fn preimage(&self, f: &Homomorphism) -> Result<Congruence> {
        if **f.codomain() != *self.algebra {
            return Err(Error::CarrierMismatch("homomorphism codomain"));
        }
        let labels: Vec<usize> = f.map().iter().map(|&y| self.labels[y]).collect();
        Congruence::from_labels(f.domain().clone(), &labels)
    }
}

impl fmt::Display for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, block) in self.blocks().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{{")?;
            for (j, e) in block.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, "}}")?;
        }
        write!(f, "}}")
    }
}

pub(crate) fn canonical_labels(labels: &[usize]) -> Vec<usize> {
    let mut renumber = std::collections::HashMap::new();
    labels
        .iter()
        .map(|l| {
            let next = renumber.len();
            *renumber.entry(*l).or_insert(next)
        })
        .collect()
}

/// First symbol under which the partition is not compatible, if any.
fn partition_violation(a: &FiniteAlgebra, labels: &[usize]) -> Option<String> {
    let n = a.size();
    let mut moved = Vec::new();
    for (s, sym) in a.signature().symbols().iter().enumerate() {
        if sym.arity == 0 {
            continue;
        }
        let mut bad = false;
        tuples::for_each(sym.arity, n, |args| {
            if bad {
                return;
            }
            let v = a.apply(s, args);
            moved.clear();
            moved.extend_from_slice(args);
            for i in 0..sym.arity {
                for b in 0..n {
                    if labels[b] == labels[args[i]] {
                        moved[i] = b;
                        if labels[a.apply(s, &moved)] != labels[v] {
                            bad = true;
                        }
                    }
                }
                moved[i] = args[i];
            }
        });
        if bad {
            return Some(sym.name.clone());
        }
    }
    None
}

/// Least congruence relating every pair in `pairs`.
pub fn congruence_generated(a: &Arc<FiniteAlgebra>, pairs: &[(usize, usize)]) -> Result<Congruence> {
    let n = a.size();
    let mut uf = UnionFind::new(n);
    for &(x, y) in pairs {
        a.check_element(x)?;
        a.check_element(y)?;
        uf.union(x, y);
    }
    let mut moved = Vec::new();
    loop {
        let mut changed = false;
        for (s, sym) in a.signature().symbols().iter().enumerate() {
            if sym.arity == 0 {
                continue;
            }
            tuples::for_each(sym.arity, n, |args| {
                let v = a.apply(s, args);
                moved.clear();
                moved.extend_from_slice(args);
                for i in 0..sym.arity {
                    moved[i] = uf.find(args[i]);
                    if moved[i] != args[i] {
                        let w = a.apply(s, &moved);
                        changed |= uf.union(v, w);
                    }
                    moved[i] = args[i];
                }
            });
        }
        if !changed {
            break;
        }
    }
    Ok(Congruence {
        algebra: a.clone(),
        labels: uf.labels(),
    })
}

/// Default ceiling on the carrier size for [`all_congruences`].
pub const DEFAULT_CONGRUENCE_BUDGET: usize = 8;

/// Every congruence of `a`, as the join-closure of the principal congruences.
/// Ordered by decreasing block count, then by labels.
pub fn all_congruences(a: &Arc<FiniteAlgebra>, budget: usize) -> Result<Vec<Congruence>> {
    if a.size() > budget {
        return Err(Error::Budget {
            what: "congruence enumeration carrier",
            needed: a.size(),
            limit: budget,
        });
    }
    let n = a.size();
    let mut found: Vec<Congruence> = vec![congruence_generated(a, &[])?];
    let mut seen: HashSet<Vec<usize>> = found.iter().map(|c| c.labels.clone()).collect();
    let mut principals = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            let c = congruence_generated(a, &[(x, y)])?;
            if seen.insert(c.labels.clone()) {
                principals.push(c.clone());
                found.push(c);
            }
        }
    }
    // every congruence is a join of principal ones
    let mut lo = 0;
    loop {
        let hi = found.len();
        if lo == hi {
            break;
        }
        for i in lo..hi {
            for p in &principals {
                let j = found[i].join(p);
                if seen.insert(j.labels.clone()) {
                    found.push(j);
                }
            }
        }
        lo = hi;
    }
    found.sort_by(|x, y| {
        y.block_count()
            .cmp(&x.block_count())
            .then_with(|| x.labels.cmp(&y.labels))
    });
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn rejects_bad_tables() {
        let sig = Signature::new(vec![Symbol::new("and", 2)]).unwrap();
        let err = FiniteAlgebra::new("b", sig.clone(), 2, vec![vec![0, 0, 0]]).unwrap_err();
        assert_eq!(
            err,
            Error::TableLength {
                symbol: "and".into(),
                expected: 4,
                found: 3
            }
        );
        let err = FiniteAlgebra::new("b", sig, 2, vec![vec![0, 0, 0, 2]]).unwrap_err();
        assert_eq!(err, Error::OutOfRange { element: 2, size: 2 });
        assert_eq!(
            FiniteAlgebra::set("e", 0).unwrap_err(),
            Error::EmptyCarrier
        );
        assert!(Signature::new(vec![Symbol::new("f", 1), Symbol::new("f", 2)]).is_err());
    }

    #[test]
    fn direct_power_examples() {
        let m = fixtures::monoid01();
        let id = direct_power(&m, 1, DEFAULT_POWER_BUDGET).unwrap();
        assert_eq!(id, m);
        let m2 = direct_power(&m, 2, DEFAULT_POWER_BUDGET).unwrap();
        assert_eq!(m2.size(), 4);
        // (0,1) = 1, (1,0) = 2, (1,1) = 3
        assert_eq!(m2.apply(1, &[1, 2]), 3);
        let s = FiniteAlgebra::set("s", 3).unwrap();
        assert_eq!(direct_power(&s, 2, DEFAULT_POWER_BUDGET).unwrap().size(), 9);
        assert!(matches!(
            direct_power(&s, 9, DEFAULT_POWER_BUDGET),
            Err(Error::Budget { .. })
        ));
    }

    #[test]
    fn closure_examples() {
        let b4 = fixtures::bool4();
        // atom (0,1) encodes as 1
        assert_eq!(b4.subalgebra_closure(&[1]).unwrap(), Subset::full(4));
        let s = FiniteAlgebra::set("s", 3).unwrap();
        assert!(s.subalgebra_closure(&[]).unwrap().is_empty());
        let z4 = fixtures::ring_z4();
        assert_eq!(z4.subalgebra_closure(&[]).unwrap(), Subset::full(4));
        assert_eq!(z4.subalgebra_closure(&[5]).unwrap_err(), Error::OutOfRange { element: 5, size: 4 });
    }

    #[test]
    fn constants_subalgebra_examples() {
        assert_eq!(fixtures::monoid01().constants_subalgebra().elements(), &[0]);
        assert_eq!(fixtures::bool4().constants_subalgebra().elements(), &[0, 3]);
        assert_eq!(fixtures::ring_z4().constants_subalgebra().elements(), &[0, 1, 2, 3]);
    }

    #[test]
    fn homomorphism_examples() {
        let z4 = Arc::new(fixtures::ring_z4());
        let z2 = Arc::new(fixtures::ring_z2());
        assert!(Homomorphism::new(z4.clone(), z4.clone(), vec![0, 1, 2, 3]).is_ok());
        assert!(Homomorphism::new(z4.clone(), z2.clone(), vec![0, 1, 0, 1]).is_ok());
        let err = Homomorphism::new(z2.clone(), z2.clone(), vec![0, 0]).unwrap_err();
        assert!(matches!(err, Error::NotHomomorphism { ref symbol, .. } if symbol == "one"), "{err}");
        assert!(matches!(
            Homomorphism::new(z2.clone(), z2.clone(), vec![0]),
            Err(Error::MapLength { .. })
        ));
        assert!(matches!(
            Homomorphism::new(z2.clone(), z2, vec![0, 7]),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn image_factorization_examples() {
        let s3 = Arc::new(FiniteAlgebra::set("s3", 3).unwrap());
        let s2 = Arc::new(FiniteAlgebra::set("s2", 2).unwrap());
        let f = Homomorphism::new(s3, s2, vec![0, 0, 1]).unwrap();
        let fact = image_factorization(&f).unwrap();
        assert_eq!(fact.image.size(), 2);
        assert_eq!(fact.surjection.map(), &[0, 0, 1]);
        assert_eq!(fact.surjection.then(&fact.inclusion).unwrap().map(), f.map());

        let z4 = Arc::new(fixtures::ring_z4());
        let z2 = Arc::new(fixtures::ring_z2());
        let f = Homomorphism::new(z4, z2.clone(), vec![0, 1, 0, 1]).unwrap();
        let fact = image_factorization(&f).unwrap();
        assert_eq!(*fact.image, *z2);
        assert!(fact.surjection.is_surjective());
    }

    #[test]
    fn congruence_generation_examples() {
        let s3 = Arc::new(FiniteAlgebra::set("s3", 3).unwrap());
        let c = congruence_generated(&s3, &[(0, 1)]).unwrap();
        assert_eq!(c.labels(), &[0, 0, 1]);
        let z4 = Arc::new(fixtures::ring_z4());
        let c = congruence_generated(&z4, &[(0, 2)]).unwrap();
        assert_eq!(c.to_string(), "{{0,2},{1,3}}");
        assert_eq!(congruence_generated(&z4, &[]).unwrap().block_count(), 4);
    }

    #[test]
    fn all_congruences_examples() {
        let one = Arc::new(FiniteAlgebra::set("one", 1).unwrap());
        assert_eq!(all_congruences(&one, 8).unwrap().len(), 1);
        let s3 = Arc::new(FiniteAlgebra::set("s3", 3).unwrap());
        assert_eq!(all_congruences(&s3, 8).unwrap().len(), 5);
        let z4 = Arc::new(fixtures::ring_z4());
        let cs: Vec<String> = all_congruences(&z4, 8)
            .unwrap()
            .iter()
            .map(|c| c.to_string())
            .collect();
        assert_eq!(cs, ["{{0},{1},{2},{3}}", "{{0,2},{1,3}}", "{{0,1,2,3}}"]);
        assert!(matches!(all_congruences(&z4, 3), Err(Error::Budget { .. })));
    }

    #[test]
    fn congruence_rejects_incompatible_partition() {
        let z4 = Arc::new(fixtures::ring_z4());
        assert!(Congruence::from_labels(z4.clone(), &[0, 0, 1, 1]).is_err());
        assert!(Congruence::from_labels(z4, &[0, 1, 0, 1]).is_ok());
    }

    #[test]
    fn homomorphism_search_matches_filter() {
        let z4 = Arc::new(fixtures::ring_z4());
        let z2 = Arc::new(fixtures::ring_z2());
        let (homs, complete) = homomorphisms(&z4, &z2, 100).unwrap();
        assert!(complete);
        assert_eq!(homs.len(), 1);
        assert_eq!(homs[0].map(), &[0, 1, 0, 1]);
        let s2 = Arc::new(fixtures::set(2));
        let s3 = Arc::new(fixtures::set(3));
        let (all, _) = homomorphisms(&s2, &s3, 100).unwrap();
        let maps: Vec<&[usize]> = all.iter().map(|h| h.map()).collect();
        assert_eq!(maps.len(), 9);
        assert_eq!(maps[1], &[0, 1]);
        let (cut, complete) = homomorphisms(&s2, &s3, 4).unwrap();
        assert_eq!((cut.len(), complete), (4, false));
        let m = Arc::new(fixtures::monoid01());
        assert_eq!(homomorphisms(&m, &m, 100).unwrap().0.len(), 2);
    }
}
