//! Relations between finite algebras, stored extensionally as bit-sets.
//!
//! Composition is written in diagram order: `compose(r, s)` relates `x` to `z`
//! when `x r y` and `y s z` for some `y`. In the usual right-to-left notation
//! that relation is `SR`.

use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::algebra::{product, FiniteAlgebra, Homomorphism, Subset, DEFAULT_POWER_BUDGET};
use crate::context::{n_kernel, null_class, IdealContext};
use crate::error::{Error, Result};
use crate::tuples;

#[derive(Debug, Clone)]
pub struct Relation {
    source: Arc<FiniteAlgebra>,
    target: Arc<FiniteAlgebra>,
    pairs: FixedBitSet,
    compatible: bool,
}

impl PartialEq for Relation {
    fn eq(&self, other: &Self) -> bool {
        self.pairs == other.pairs && self.source == other.source && self.target == other.target
    }
}

impl Eq for Relation {}

impl Relation {
    fn from_bits(source: Arc<FiniteAlgebra>, target: Arc<FiniteAlgebra>, pairs: FixedBitSet) -> Self {
        let compatible = bits_compatible(&source, &target, &pairs);
        Self {
            source,
            target,
            pairs,
            compatible,
        }
    }

    pub fn new(
        source: Arc<FiniteAlgebra>,
        target: Arc<FiniteAlgebra>,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut bits = FixedBitSet::with_capacity(source.size() * target.size());
        for (a, b) in pairs {
            source.check_element(a)?;
            target.check_element(b)?;
            bits.insert(a * target.size() + b);
        }
        Ok(Self::from_bits(source, target, bits))
    }

    /// A relation on a single algebra.
    pub fn on(a: &Arc<FiniteAlgebra>, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Self::new(a.clone(), a.clone(), pairs)
    }

    pub fn empty(source: Arc<FiniteAlgebra>, target: Arc<FiniteAlgebra>) -> Self {
        let bits = FixedBitSet::with_capacity(source.size() * target.size());
        Self::from_bits(source, target, bits)
    }

    pub fn full(source: Arc<FiniteAlgebra>, target: Arc<FiniteAlgebra>) -> Self {
        let mut bits = FixedBitSet::with_capacity(source.size() * target.size());
        bits.insert_range(..);
        Self::from_bits(source, target, bits)
    }

    /// Relation on `a` whose pair `(x, y)` has bit `x * |a| + y`.
    pub fn from_bitset(a: &Arc<FiniteAlgebra>, bits: FixedBitSet) -> Result<Self> {
        if bits.len() != a.size() * a.size() {
            return Err(Error::CarrierMismatch("bit-set length"));
        }
        Ok(Self::from_bits(a.clone(), a.clone(), bits))
    }

    pub fn source(&self) -> &Arc<FiniteAlgebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteAlgebra> {
        &self.target
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.pairs
    }

    /// Whether the pair set is a subalgebra of `source × target`.
    pub fn is_compatible(&self) -> bool {
        self.compatible
    }

    pub fn is_square(&self) -> bool {
        self.source == self.target
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        a < self.source.size() && b < self.target.size() && self.pairs.contains(a * self.target.size() + b)
    }

    /// Pairs in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let m = self.target.size();
        self.pairs.ones().map(move |i| (i / m, i % m))
    }

    pub fn len(&self) -> usize {
        self.pairs.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_clear()
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.pairs.is_subset(&other.pairs)
    }

    /// First pair, lexicographically, in exactly one of the two relations.
    pub fn first_difference(&self, other: &Relation) -> Option<(usize, usize)> {
        let m = self.target.size();
        self.pairs
            .symmetric_difference(&other.pairs)
            .min()
            .map(|i| (i / m, i % m))
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::CarrierMismatch("relation is not on a single algebra"))
        }
    }
}

/// Renders the pair set, e.g. `{(0,0),(0,1)}`.
impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (a, b)) in self.pairs().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "({a},{b})")?;
        }
        write!(f, "}}")
    }
}

fn bits_compatible(source: &FiniteAlgebra, target: &FiniteAlgebra, bits: &FixedBitSet) -> bool {
    if source.signature().is_empty() {
        return true;
    }
    if !source.same_signature(target) {
        return false;
    }
    let m = target.size();
    let members: Vec<usize> = bits.ones().collect();
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (s, sym) in source.signature().symbols().iter().enumerate() {
        let mut ok = true;
        tuples::for_each(sym.arity, members.len(), |idx| {
            if !ok {
                return;
            }
            left.clear();
            right.clear();
            for &i in idx {
                left.push(members[i] / m);
                right.push(members[i] % m);
            }
            ok = bits.contains(source.apply(s, &left) * m + target.apply(s, &right));
        });
        if !ok {
            return false;
        }
    }
    true
}

/// Diagram-order composite: `x` relates to `z` when `x r y` and `y s z`.
pub fn compose(r: &Relation, s: &Relation) -> Result<Relation> {
    if *r.target != *s.source {
        return Err(Error::CarrierMismatch("composing relations through different algebras"));
    }
    let out_size = s.target.size();
    let mut bits = FixedBitSet::with_capacity(r.source.size() * out_size);
    for (x, y) in r.pairs() {
        for z in 0..out_size {
            if s.pairs.contains(y * out_size + z) {
                bits.insert(x * out_size + z);
            }
        }
    }
    Ok(Relation::from_bits(r.source.clone(), s.target.clone(), bits))
}

pub fn opposite(r: &Relation) -> Relation {
    let n = r.source.size();
    let mut bits = FixedBitSet::with_capacity(r.target.size() * n);
    for (a, b) in r.pairs() {
        bits.insert(b * n + a);
    }
    Relation {
        source: r.target.clone(),
        target: r.source.clone(),
        pairs: bits,
        compatible: r.compatible,
    }
}

pub fn diagonal(a: &Arc<FiniteAlgebra>) -> Relation {
    let n = a.size();
    let mut bits = FixedBitSet::with_capacity(n * n);
    for x in 0..n {
        bits.insert(x * n + x);
    }
    Relation {
        source: a.clone(),
        target: a.clone(),
        pairs: bits,
        compatible: true,
    }
}

/// `Eq(f) = {(a, a') : f(a) = f(a')}`.
pub fn kernel_pair(f: &Homomorphism) -> Relation {
    let a = f.domain();
    let n = a.size();
    let mut bits = FixedBitSet::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            if f.apply(x) == f.apply(y) {
                bits.insert(x * n + y);
            }
        }
    }
    Relation {
        source: a.clone(),
        target: a.clone(),
        pairs: bits,
        compatible: true,
    }
}

/// `f⁻¹(S) = {(a, a') : (f(a), f(a')) ∈ S}`.
pub fn inverse_image(f: &Homomorphism, s: &Relation) -> Result<Relation> {
    if *s.source != **f.codomain() || *s.target != **f.codomain() {
        return Err(Error::CarrierMismatch("relation is not on the codomain"));
    }
    let a = f.domain();
    let n = a.size();
    let mut bits = FixedBitSet::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            if s.contains(f.apply(x), f.apply(y)) {
                bits.insert(x * n + y);
            }
        }
    }
    Ok(Relation::from_bits(a.clone(), a.clone(), bits))
}

/// Pairs whose first component lies in `first`.
fn restrict_first(r: &Relation, first: &Subset) -> Relation {
    let m = r.target.size();
    let mut bits = r.pairs.clone();
    for i in r.pairs.ones() {
        if !first.contains(i / m) {
            bits.set(i, false);
        }
    }
    Relation::from_bits(r.source.clone(), r.target.clone(), bits)
}

/// Over a nonempty signature only compatible relations may be starred.
fn check_star_input(ctx: &IdealContext, r: &Relation) -> Result<()> {
    r.require_square()?;
    ctx.validate(&r.source)?;
    if !r.source.signature().is_empty() && !r.compatible {
        return Err(Error::NotCompatible(r.source.name().to_string()));
    }
    Ok(())
}

/// `R*`: the pairs of `r` whose first component is null.
pub fn star(ctx: &IdealContext, r: &Relation) -> Result<Relation> {
    check_star_input(ctx, r)?;
    star_unchecked(ctx, r)
}

pub(crate) fn star_unchecked(ctx: &IdealContext, r: &Relation) -> Result<Relation> {
    let k = null_class(ctx, &r.source)?;
    Ok(restrict_first(r, &k))
}

/// `R*` computed as the N-kernel of the first projection `r₀: R → X`, where
/// `R` is taken as a subalgebra of `X × X`, pushed forward along `⟨r₀, r₁⟩`.
pub fn star_via_pullback(ctx: &IdealContext, r: &Relation) -> Result<Relation> {
    check_star_input(ctx, r)?;
    let x = &r.source;
    if r.is_empty() {
        return Ok(r.clone());
    }
    let square = product(&[x, x], DEFAULT_POWER_BUDGET.max(x.size() * x.size()))?;
    let members = Subset::from_elements(square.size(), r.pairs.ones())?;
    let graph = Arc::new(square.restrict(format!("rel({})", x.name()), &members)?);
    let n = x.size();
    let first: Vec<usize> = members.elements().iter().map(|&p| p / n).collect();
    let r0 = Homomorphism::new(graph, x.clone(), first)?;
    let kernel = n_kernel(ctx, &r0)?;
    let mut bits = FixedBitSet::with_capacity(n * n);
    for &i in kernel.elements() {
        bits.insert(members.elements()[i]);
    }
    Ok(Relation::from_bits(x.clone(), x.clone(), bits))
}

/// `Eq(f)*`.
pub fn star_kernel(ctx: &IdealContext, f: &Homomorphism) -> Result<Relation> {
    star(ctx, &kernel_pair(f))
}

/// `{(g0(t), g1(t)) : t ∈ G}`.
pub fn graph_image(g0: &Homomorphism, g1: &Homomorphism) -> Result<Relation> {
    if *g0.domain() != *g1.domain() || *g0.codomain() != *g1.codomain() {
        return Err(Error::CarrierMismatch("graph legs must share domain and codomain"));
    }
    let x = g0.codomain();
    let n = x.size();
    let mut bits = FixedBitSet::with_capacity(n * n);
    for t in 0..g0.domain().size() {
        bits.insert(g0.apply(t) * n + g1.apply(t));
    }
    Ok(Relation::from_bits(x.clone(), x.clone(), bits))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RelationPredicates {
    pub reflexive: bool,
    pub symmetric: bool,
    pub transitive: bool,
    pub compatible: bool,
}

pub fn relation_predicates(r: &Relation) -> Result<RelationPredicates> {
    r.require_square()?;
    let n = r.source.size();
    let reflexive = (0..n).all(|x| r.contains(x, x));
    let symmetric = r.pairs().all(|(a, b)| r.contains(b, a));
    let transitive = r.pairs().all(|(a, b)| (0..n).all(|c| !r.contains(b, c) || r.contains(a, c)));
    Ok(RelationPredicates {
        reflexive,
        symmetric,
        transitive,
        compatible: bits_compatible(&r.source, &r.target, &r.pairs),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn set(n: usize) -> Arc<FiniteAlgebra> {
        Arc::new(fixtures::set(n))
    }

    fn rel(a: &Arc<FiniteAlgebra>, pairs: &[(usize, usize)]) -> Relation {
        Relation::on(a, pairs.iter().copied()).unwrap()
    }

    #[test]
    fn composition_examples() {
        let x = set(2);
        let s = rel(&x, &[(0, 1), (1, 0)]);
        assert_eq!(compose(&diagonal(&x), &s).unwrap(), s);
        assert_eq!(
            compose(&rel(&x, &[(0, 1)]), &rel(&x, &[(1, 1)])).unwrap(),
            rel(&x, &[(0, 1)])
        );
        assert!(compose(&rel(&x, &[(0, 1)]), &rel(&x, &[(0, 0)])).unwrap().is_empty());
        assert!(compose(&diagonal(&x), &diagonal(&set(3))).is_err());
    }

    #[test]
    fn opposite_and_diagonal() {
        let x = set(3);
        assert_eq!(opposite(&diagonal(&x)), diagonal(&x));
        assert_eq!(diagonal(&x).to_string(), "{(0,0),(1,1),(2,2)}");
        assert_eq!(diagonal(&set(1)).to_string(), "{(0,0)}");
        let y = set(2);
        assert_eq!(opposite(&rel(&y, &[(0, 1), (1, 1)])), rel(&y, &[(1, 0), (1, 1)]));
        let p = relation_predicates(&diagonal(&x)).unwrap();
        assert!(p.reflexive && p.symmetric && p.transitive && p.compatible);
    }

    #[test]
    fn kernel_pair_and_inverse_image() {
        let s3 = set(3);
        let s2 = set(2);
        let f = Homomorphism::new(s3.clone(), s2.clone(), vec![0, 0, 1]).unwrap();
        assert_eq!(kernel_pair(&f).to_string(), "{(0,0),(0,1),(1,0),(1,1),(2,2)}");
        assert_eq!(inverse_image(&f, &diagonal(&s2)).unwrap(), kernel_pair(&f));
        let s = rel(&s2, &[(0, 1), (0, 0), (1, 1)]);
        assert_eq!(
            inverse_image(&f, &s).unwrap().to_string(),
            "{(0,0),(0,1),(0,2),(1,0),(1,1),(1,2),(2,2)}"
        );
        assert_eq!(inverse_image(&Homomorphism::identity(s2.clone()), &s).unwrap(), s);
        let inj = Homomorphism::new(s2.clone(), s3.clone(), vec![2, 0]).unwrap();
        assert_eq!(kernel_pair(&inj), diagonal(&s2));

        let z4 = Arc::new(fixtures::ring_z4());
        let z2 = Arc::new(fixtures::ring_z2());
        let m = Homomorphism::new(z4, z2, vec![0, 1, 0, 1]).unwrap();
        assert_eq!(
            kernel_pair(&m).to_string(),
            "{(0,0),(0,2),(1,1),(1,3),(2,0),(2,2),(3,1),(3,3)}"
        );
    }

    #[test]
    fn star_examples() {
        let x = set(3);
        let r = rel(&x, &[(0, 0), (0, 1), (1, 1), (2, 0)]);
        assert_eq!(star(&IdealContext::Total, &r).unwrap(), r);
        let p0 = IdealContext::pointed_at(0);
        assert_eq!(star(&p0, &r).unwrap(), rel(&x, &[(0, 0), (0, 1)]));
        assert_eq!(star_via_pullback(&p0, &r).unwrap(), rel(&x, &[(0, 0), (0, 1)]));
        assert_eq!(star_via_pullback(&p0, &diagonal(&x)).unwrap(), rel(&x, &[(0, 0)]));
        let empty = Relation::empty(x.clone(), x.clone());
        assert!(star_via_pullback(&p0, &empty).unwrap().is_empty());

        // (0,0)=0, (0,1)=1, (1,0)=2, (1,1)=3; E = {0, 3}
        let z2 = Arc::new(fixtures::ring_z2());
        let zz = Arc::new(fixtures::ring_z2xz2());
        let first = Homomorphism::new(zz.clone(), z2, vec![0, 0, 1, 1]).unwrap();
        let eq = kernel_pair(&first);
        let expected = rel(&zz, &[(0, 0), (0, 1), (3, 3), (3, 2)]);
        assert_eq!(star(&IdealContext::ProtoPointed, &eq).unwrap(), expected);
        assert_eq!(star_via_pullback(&IdealContext::ProtoPointed, &eq).unwrap(), expected);
    }

    #[test]
    fn star_rejects_incompatible_relation_over_operations() {
        let b = Arc::new(fixtures::bool2());
        let order = rel(&b, &[(0, 0), (0, 1), (1, 1)]);
        assert!(!order.is_compatible());
        assert!(matches!(star(&IdealContext::Total, &order), Err(Error::NotCompatible(_))));
        assert!(star_via_pullback(&IdealContext::Total, &order).is_err());
    }

    #[test]
    fn star_kernel_examples() {
        let s3 = set(3);
        let s2 = set(2);
        let f = Homomorphism::new(s3.clone(), s2.clone(), vec![0, 0, 1]).unwrap();
        assert_eq!(star_kernel(&IdealContext::Total, &f).unwrap(), kernel_pair(&f));
        assert_eq!(
            star_kernel(&IdealContext::pointed_at(0), &f).unwrap(),
            rel(&s3, &[(0, 0), (0, 1)])
        );
        let inj = Homomorphism::new(s2.clone(), s3, vec![0, 2]).unwrap();
        assert_eq!(star_kernel(&IdealContext::pointed_at(0), &inj).unwrap(), rel(&s2, &[(0, 0)]));
    }

    #[test]
    fn graph_image_examples() {
        let x = set(2);
        let id = Homomorphism::identity(x.clone());
        assert_eq!(graph_image(&id, &id).unwrap(), diagonal(&x));
        let xx = Arc::new(product(&[&x, &x], 16).unwrap());
        let p0 = Homomorphism::new(xx.clone(), x.clone(), vec![0, 0, 1, 1]).unwrap();
        let p1 = Homomorphism::new(xx, x.clone(), vec![0, 1, 0, 1]).unwrap();
        assert_eq!(graph_image(&p0, &p1).unwrap(), Relation::full(x.clone(), x));
    }

    #[test]
    fn predicate_examples() {
        let x = set(2);
        let p = relation_predicates(&rel(&x, &[(0, 0), (0, 1), (1, 1)])).unwrap();
        assert!(p.reflexive && p.transitive && !p.symmetric);
        let b = Arc::new(fixtures::bool2());
        let p = relation_predicates(&rel(&b, &[(0, 0), (0, 1), (1, 1)])).unwrap();
        assert!(p.reflexive && !p.compatible);
    }
}
