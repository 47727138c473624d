//! Decision procedures for star-symmetry and star-permutability on concrete
//! finite algebras.
//!
//! A single finite algebra can refute a property of the variety it generates
//! (a failing relation is a counterexample in that variety) but cannot
//! certify it; positive certificates come from [`crate::terms`].

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::algebra::{all_congruences, product, FiniteAlgebra, Homomorphism, Subset, DEFAULT_CONGRUENCE_BUDGET, DEFAULT_POWER_BUDGET};
use crate::context::{n_kernel, null_class, IdealContext};
use crate::error::{Error, Result};
use crate::relation::{compose, diagonal, opposite, relation_predicates, star_unchecked, Relation};
use crate::terms::DEFAULT_CLONE_BUDGET;
use crate::tuples;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budgets {
    /// Largest carrier whose congruences are enumerated.
    pub max_congruence_size: usize,
    /// Most reflexive compatible relations enumerated per algebra.
    pub max_relations: usize,
    /// Most term operations generated per clone.
    pub clone_tables: usize,
    /// Most assignments tried by the σ search.
    pub sigma_nodes: usize,
    /// Largest product carrier materialized.
    pub max_power_size: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Self {
            max_congruence_size: DEFAULT_CONGRUENCE_BUDGET,
            max_relations: 4096,
            clone_tables: DEFAULT_CLONE_BUDGET,
            sigma_nodes: 1 << 20,
            max_power_size: DEFAULT_POWER_BUDGET,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

/// `witness` is `(a, b)` with `a` null, `(a, b) ∈ R` and `(b, a) ∉ R`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymmetryVerdict {
    pub holds: bool,
    pub witness: Option<(usize, usize)>,
    /// Set when the witness was found in `R°` rather than `R`.
    pub in_opposite: bool,
}

impl SymmetryVerdict {
    fn from_witness(witness: Option<(usize, usize)>, in_opposite: bool) -> Self {
        Self {
            holds: witness.is_none(),
            witness,
            in_opposite: in_opposite && witness.is_some(),
        }
    }
}

fn check_square(ctx: &IdealContext, r: &Relation) -> Result<Subset> {
    if !r.is_square() {
        return Err(Error::CarrierMismatch("relation is not on a single algebra"));
    }
    null_class(ctx, r.source())
}

fn left_witness(null: &Subset, r: &Relation) -> Option<(usize, usize)> {
    r.pairs().find(|&(a, b)| null.contains(a) && !r.contains(b, a))
}

/// `R* ≤ (R°)*`: every pair `(a, b) ∈ R` with `a` null has `(b, a) ∈ R`.
pub fn is_left_star_symmetric(ctx: &IdealContext, r: &Relation) -> Result<SymmetryVerdict> {
    let null = check_square(ctx, r)?;
    Ok(SymmetryVerdict::from_witness(left_witness(&null, r), false))
}

/// `R* = (R°)*`: both `R` and `R°` are left star-symmetric; `R` is checked first.
pub fn is_star_symmetric(ctx: &IdealContext, r: &Relation) -> Result<SymmetryVerdict> {
    let null = check_square(ctx, r)?;
    if let Some(w) = left_witness(&null, r) {
        return Ok(SymmetryVerdict::from_witness(Some(w), false));
    }
    let op = opposite(r);
    Ok(SymmetryVerdict::from_witness(left_witness(&null, &op), true))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationVerdict {
    pub holds: bool,
    /// `RS*`: first `S*`, then `R`.
    pub rs: Relation,
    /// `SR*`: first `R*`, then `S`.
    pub sr: Relation,
    /// First pair in exactly one of the composites.
    pub witness: Option<(usize, usize)>,
}

/// Compares `RS*` with `SR*`.
pub fn check_star_permutes(ctx: &IdealContext, r: &Relation, s: &Relation) -> Result<PermutationVerdict> {
    check_square(ctx, r)?;
    check_square(ctx, s)?;
    let rs = compose(&star_unchecked(ctx, s)?, r)?;
    let sr = compose(&star_unchecked(ctx, r)?, s)?;
    let witness = rs.first_difference(&sr);
    Ok(PermutationVerdict {
        holds: witness.is_none(),
        rs,
        sr,
        witness,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphVerdict {
    /// `sigma` lists `(t, σ(t))` for `t` in the N-kernel of `g0`, increasing.
    Symmetric { sigma: Vec<(usize, usize)> },
    /// No σ exists. `empty_candidates` names an element of the N-kernel of `g0`
    /// with no admissible image, when there is one.
    NotSymmetric { empty_candidates: Option<usize> },
    Inconclusive { nodes: usize },
}

impl GraphVerdict {
    pub fn verdict(&self) -> Verdict {
        match self {
            GraphVerdict::Symmetric { .. } => Verdict::Pass,
            GraphVerdict::NotSymmetric { .. } => Verdict::Fail,
            GraphVerdict::Inconclusive { .. } => Verdict::Inconclusive,
        }
    }
}

/// Searches for a homomorphism `σ: K₀ → K₁` between the N-kernels of `g0` and
/// `g1` with `g1 σ = g0` and `g0 σ = g1` on `K₀`.
///
/// Elements of `K₀` are assigned in increasing order, candidates tried in
/// increasing order; each operation constraint is checked as soon as all the
/// elements it mentions are assigned.
pub fn graph_left_star_symmetric(
    ctx: &IdealContext,
    g0: &Homomorphism,
    g1: &Homomorphism,
    node_budget: usize,
) -> Result<GraphVerdict> {
    if *g0.domain() != *g1.domain() || *g0.codomain() != *g1.codomain() {
        return Err(Error::CarrierMismatch("graph legs must share domain and codomain"));
    }
    let g = g0.domain().clone();
    let k0 = n_kernel(ctx, g0)?;
    let k1 = n_kernel(ctx, g1)?;
    let order = k0.elements();
    let mut position = vec![usize::MAX; g.size()];
    for (p, &t) in order.iter().enumerate() {
        position[t] = p;
    }

    let mut candidates = Vec::with_capacity(order.len());
    for &t in order {
        let c: Vec<usize> = k1
            .elements()
            .iter()
            .copied()
            .filter(|&u| g0.apply(u) == g1.apply(t) && g1.apply(u) == g0.apply(t))
            .collect();
        if c.is_empty() {
            return Ok(GraphVerdict::NotSymmetric {
                empty_candidates: Some(t),
            });
        }
        candidates.push(c);
    }

    // constraints[p]: (symbol, argument positions, result position) whose
    // last-assigned element sits at position p
    let mut constraints: Vec<Vec<(usize, Vec<usize>, usize)>> = vec![Vec::new(); order.len()];
    let mut args = Vec::new();
    for (s, sym) in g.signature().symbols().iter().enumerate() {
        tuples::for_each(sym.arity, order.len(), |idx| {
            args.clear();
            args.extend(idx.iter().map(|&p| order[p]));
            let result = position[g.apply(s, &args)];
            debug_assert!(result != usize::MAX, "N-kernels are subalgebras");
            let last = idx.iter().copied().chain([result]).max().expect("result position");
            constraints[last].push((s, idx.to_vec(), result));
        });
    }

    let mut sigma = vec![usize::MAX; order.len()];
    let mut nodes = 0usize;
    let mut choice = vec![0usize; order.len()];
    let mut p = 0usize;
    let mut image_args = Vec::new();
    // iterative backtracking over positions
    loop {
        if p == order.len() {
            let sigma = order.iter().copied().zip(sigma.iter().copied()).collect();
            return Ok(GraphVerdict::Symmetric { sigma });
        }
        let mut advanced = false;
        while choice[p] < candidates[p].len() {
            let u = candidates[p][choice[p]];
            choice[p] += 1;
            nodes += 1;
            if nodes > node_budget {
                return Ok(GraphVerdict::Inconclusive { nodes: node_budget });
            }
            sigma[p] = u;
            let consistent = constraints[p].iter().all(|(s, idx, result)| {
                image_args.clear();
                image_args.extend(idx.iter().map(|&q| sigma[q]));
                g.apply(*s, &image_args) == sigma[*result]
            });
            if consistent {
                advanced = true;
                break;
            }
        }
        if advanced {
            p += 1;
            continue;
        }
        choice[p] = 0;
        sigma[p] = usize::MAX;
        if p == 0 {
            return Ok(GraphVerdict::NotSymmetric {
                empty_candidates: None,
            });
        }
        p -= 1;
    }
}

#[derive(Debug, Clone)]
pub struct RelationEnumeration {
    pub relations: Vec<Relation>,
    pub truncated: bool,
}

/// Canonical order: lexicographic on the increasing list of pairs.
pub fn canonical_cmp(a: &Relation, b: &Relation) -> std::cmp::Ordering {
    a.bits().ones().cmp(b.bits().ones())
}

/// All subalgebras of `A × A` containing the diagonal, in canonical order.
///
/// Breadth-first from the closure of the diagonal: each found relation is
/// extended by one absent pair and re-closed. Any target relation is reached
/// by adding its pairs one at a time, since each intermediate closure stays
/// inside the target.
pub fn enumerate_reflexive_compatible(a: &Arc<FiniteAlgebra>, budgets: &Budgets) -> Result<RelationEnumeration> {
    let square = product(&[a, a], budgets.max_power_size)?;
    let diag = diagonal(a);
    let start = square.subalgebra_closure(&diag.bits().ones().collect::<Vec<_>>())?;
    let mut found: Vec<Subset> = vec![start.clone()];
    let mut seen: HashSet<Subset> = HashSet::from([start]);
    let mut truncated = false;
    let mut i = 0;
    'outer: while i < found.len() {
        let current = found[i].clone();
        for p in 0..square.size() {
            if current.contains(p) {
                continue;
            }
            let next = square.extend_closed(&current, &[p])?;
            if seen.contains(&next) {
                continue;
            }
            if found.len() >= budgets.max_relations {
                truncated = true;
                break 'outer;
            }
            seen.insert(next.clone());
            found.push(next);
        }
        i += 1;
    }
    let n2 = square.size();
    let mut relations: Vec<Relation> = found
        .into_iter()
        .map(|s| {
            let mut bits = FixedBitSet::with_capacity(n2);
            for &p in s.elements() {
                bits.insert(p);
            }
            Relation::from_bitset(a, bits)
        })
        .collect::<Result<_>>()?;
    relations.sort_by(canonical_cmp);
    Ok(RelationEnumeration { relations, truncated })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Condition {
    /// `RS* = SR*` for congruences (kernel pairs).
    EffectiveEquivalences,
    /// `RS* = SR*` for compatible equivalence relations.
    Equivalences,
    /// Every reflexive compatible relation is left star-symmetric.
    LeftStarSymmetric,
    /// Every reflexive compatible relation is star-symmetric.
    StarSymmetric,
}

impl Condition {
    pub const ALL: [Condition; 4] = [
        Condition::EffectiveEquivalences,
        Condition::Equivalences,
        Condition::LeftStarSymmetric,
        Condition::StarSymmetric,
    ];

    pub fn number(self) -> usize {
        match self {
            Condition::EffectiveEquivalences => 1,
            Condition::Equivalences => 2,
            Condition::LeftStarSymmetric => 3,
            Condition::StarSymmetric => 4,
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Condition::EffectiveEquivalences => "RS* = SR* for all congruences R, S",
            Condition::Equivalences => "RS* = SR* for all compatible equivalence relations R, S",
            Condition::LeftStarSymmetric => "every reflexive compatible relation is left star-symmetric",
            Condition::StarSymmetric => "every reflexive compatible relation is star-symmetric",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Counterexample {
    NotPermuting {
        r: Relation,
        s: Relation,
        pair: (usize, usize),
    },
    NotSymmetric {
        relation: Relation,
        pair: (usize, usize),
        in_opposite: bool,
    },
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Counterexample::NotPermuting { r, s, pair: (a, b) } => {
                write!(f, "R={r},S={s},pair=({a},{b})")
            }
            Counterexample::NotSymmetric {
                relation,
                pair: (a, b),
                in_opposite,
            } => {
                write!(f, "relation={relation},pair=({a},{b})")?;
                if *in_opposite {
                    write!(f, ",side=opposite")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionResult {
    pub condition: Condition,
    pub verdict: Verdict,
    /// Relations (or ordered pairs of relations) examined.
    pub examined: usize,
    pub truncated: bool,
    pub counterexamples: Vec<Counterexample>,
    pub note: Option<String>,
}

impl ConditionResult {
    fn new(condition: Condition, examined: usize, truncated: bool, counterexamples: Vec<Counterexample>) -> Self {
        let verdict = if !counterexamples.is_empty() {
            Verdict::Fail
        } else if truncated {
            Verdict::Inconclusive
        } else {
            Verdict::Pass
        };
        Self {
            condition,
            verdict,
            examined,
            truncated,
            counterexamples,
            note: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub algebra: String,
    pub context: IdealContext,
    pub relations_enumerated: usize,
    pub congruences: usize,
    pub conditions: Vec<ConditionResult>,
}

impl AuditReport {
    pub fn verdict(&self) -> Verdict {
        combine(self.conditions.iter().map(|c| c.verdict))
    }

    pub fn condition(&self, c: Condition) -> &ConditionResult {
        self.conditions
            .iter()
            .find(|r| r.condition == c)
            .expect("audits cover every condition")
    }
}

/// Fail dominates, then Inconclusive.
pub fn combine(verdicts: impl IntoIterator<Item = Verdict>) -> Verdict {
    let mut out = Verdict::Pass;
    for v in verdicts {
        match v {
            Verdict::Fail => return Verdict::Fail,
            Verdict::Inconclusive => out = Verdict::Inconclusive,
            Verdict::Pass => {}
        }
    }
    out
}

fn permutation_suite(
    ctx: &IdealContext,
    condition: Condition,
    relations: &[Relation],
    truncated: bool,
) -> Result<ConditionResult> {
    let mut counterexamples = Vec::new();
    for r in relations {
        for s in relations {
            let v = check_star_permutes(ctx, r, s)?;
            if let Some(pair) = v.witness {
                counterexamples.push(Counterexample::NotPermuting {
                    r: r.clone(),
                    s: s.clone(),
                    pair,
                });
            }
        }
    }
    Ok(ConditionResult::new(
        condition,
        relations.len() * relations.len(),
        truncated,
        counterexamples,
    ))
}

fn symmetry_suite(
    condition: Condition,
    relations: &[Relation],
    truncated: bool,
    check: impl Fn(&Relation) -> Result<SymmetryVerdict>,
) -> Result<ConditionResult> {
    let mut counterexamples = Vec::new();
    for r in relations {
        let v = check(r)?;
        if let Some(pair) = v.witness {
            counterexamples.push(Counterexample::NotSymmetric {
                relation: r.clone(),
                pair,
                in_opposite: v.in_opposite,
            });
        }
    }
    Ok(ConditionResult::new(condition, relations.len(), truncated, counterexamples))
}

/// Runs the four condition suites on one algebra.
///
/// Condition 1 ranges over the congruences; condition 2 over the compatible
/// equivalence relations found among the enumerated reflexive compatible
/// relations; conditions 3 and 4 over all enumerated reflexive compatible
/// relations.
pub fn audit_algebra(ctx: &IdealContext, a: &Arc<FiniteAlgebra>, budgets: &Budgets) -> Result<AuditReport> {
    ctx.validate(a)?;
    let enumeration = enumerate_reflexive_compatible(a, budgets)?;
    let reflexive = &enumeration.relations;

    let (congruences, congruences_truncated) = match all_congruences(a, budgets.max_congruence_size) {
        Ok(cs) => (
            cs.iter()
                .map(|c| Relation::on(a, (0..a.size()).flat_map(|x| (0..a.size()).map(move |y| (x, y))).filter(|&(x, y)| c.related(x, y))))
                .collect::<Result<Vec<_>>>()?,
            false,
        ),
        Err(Error::Budget { .. }) => (Vec::new(), true),
        Err(e) => return Err(e),
    };
    let equivalences: Vec<Relation> = reflexive
        .iter()
        .filter(|r| {
            relation_predicates(r)
                .map(|p| p.symmetric && p.transitive)
                .unwrap_or(false)
        })
        .cloned()
        .collect();

    let mut c1 = permutation_suite(ctx, Condition::EffectiveEquivalences, &congruences, congruences_truncated)?;
    if congruences_truncated {
        c1.note = Some(format!(
            "carrier of size {} exceeds the congruence budget {}",
            a.size(),
            budgets.max_congruence_size
        ));
    }
    let mut c2 = permutation_suite(ctx, Condition::Equivalences, &equivalences, enumeration.truncated)?;
    c2.note = Some("in a variety the compatible equivalence relations are exactly the congruences".into());
    let c3 = symmetry_suite(Condition::LeftStarSymmetric, reflexive, enumeration.truncated, |r| {
        is_left_star_symmetric(ctx, r)
    })?;
    let c4 = symmetry_suite(Condition::StarSymmetric, reflexive, enumeration.truncated, |r| {
        is_star_symmetric(ctx, r)
    })?;

    Ok(AuditReport {
        algebra: a.name().to_string(),
        context: ctx.clone(),
        relations_enumerated: reflexive.len(),
        congruences: congruences.len(),
        conditions: vec![c1, c2, c3, c4],
    })
}
