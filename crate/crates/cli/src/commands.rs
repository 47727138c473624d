use std::collections::HashSet;
use std::sync::Arc;

use starperm::checkers::{
    audit_algebra, check_star_permutes, graph_left_star_symmetric, is_left_star_symmetric, is_star_symmetric,
    Budgets, Condition, GraphVerdict, Verdict,
};
use starperm::format::ParsedRelation;
use starperm::terms::{
    e_subtractive_identities, find_e_subtractive_terms_at, find_maltsev_term, maltsev_identities,
    verify_term_identities, TermOperation, TermSearch,
};
use starperm::{
    all_congruences, compose, diagonal, homomorphisms, inverse_image, is_null_morphism, is_saturating,
    kernel_pair, n_kernel, null_class, opposite, product, relation_predicates, star, star_via_pullback,
    Error, FiniteAlgebra, Homomorphism, IdealContext, Relation, Subset,
};

use crate::report::{Check, Report};
use crate::{CliError, Property};

fn describe(a: &FiniteAlgebra) -> String {
    let symbols: Vec<String> = a
        .signature()
        .symbols()
        .iter()
        .map(|s| format!("{}/{}", s.name, s.arity))
        .collect();
    if symbols.is_empty() {
        format!("algebra {} of size {} with empty signature", a.name(), a.size())
    } else {
        format!("algebra {} of size {} with {}", a.name(), a.size(), symbols.join(" "))
    }
}

fn scope_note(a: &FiniteAlgebra) -> String {
    format!(
        "a FAIL refutes the condition for the variety generated by {}; a PASS covers the relations of {} only",
        a.name(),
        a.name()
    )
}

pub fn audit(a: &Arc<FiniteAlgebra>, ctx: &IdealContext, budgets: &Budgets) -> Result<Report, CliError> {
    let audit = audit_algebra(ctx, a, budgets)?;
    let mut report = Report::default();
    report.header.push(describe(a));
    report.header.push(format!("context {ctx}"));
    report.header.push(format!(
        "reflexive compatible relations: {}, congruences: {}",
        audit.relations_enumerated, audit.congruences
    ));
    for c in &audit.conditions {
        let unit = match c.condition {
            Condition::EffectiveEquivalences | Condition::Equivalences => "ordered pairs",
            Condition::LeftStarSymmetric | Condition::StarSymmetric => "relations",
        };
        let mut check = Check::new(
            format!("condition-{}", c.condition.number()),
            c.verdict,
            format!("{} ({unit} examined: {})", c.condition.description(), c.examined),
        );
        if let Some(first) = c.counterexamples.first() {
            check = check.witness(first.to_string());
        }
        for cx in c.counterexamples.iter().skip(1) {
            check = check.detail(format!("also {cx}"));
        }
        if c.truncated {
            check = check.detail("enumeration truncated by budget");
        }
        if let Some(note) = &c.note {
            check = check.detail(note.clone());
        }
        report.checks.push(check);
    }
    report.notes.push(scope_note(a));
    Ok(report)
}

fn require_compatible(a: &FiniteAlgebra, r: &ParsedRelation) -> Result<(), CliError> {
    if !a.signature().is_empty() && !r.relation.is_compatible() {
        return Err(CliError(format!(
            "relation for `{}` is not compatible with the operations of `{}`; star properties need a compatible relation",
            r.header,
            a.name()
        )));
    }
    Ok(())
}

fn first_missing<I: IntoIterator<Item = (usize, usize)>>(r: &Relation, candidates: I) -> Option<(usize, usize)> {
    candidates.into_iter().find(|&(x, y)| !r.contains(x, y))
}

pub fn check_relation(
    a: &Arc<FiniteAlgebra>,
    ctx: &IdealContext,
    rels: &[ParsedRelation],
    property: Property,
    budgets: &Budgets,
) -> Result<Report, CliError> {
    let wanted = if property == Property::StarPermutes { 2 } else { 1 };
    if rels.len() != wanted {
        return Err(CliError(format!(
            "this property takes {wanted} relation file(s), got {}",
            rels.len()
        )));
    }
    ctx.validate(a)?;
    let mut report = Report::default();
    report.header.push(describe(a));
    report.header.push(format!("context {ctx}"));
    for (i, p) in rels.iter().enumerate() {
        let name = if i == 0 { "R" } else { "S" };
        report.header.push(format!("{name} = {} (compatible: {})", p.relation, p.relation.is_compatible()));
        report.notes.extend(p.warnings.iter().cloned());
    }
    let r = &rels[0].relation;
    let n = a.size();
    let all_pairs = move || (0..n).flat_map(move |x| (0..n).map(move |y| (x, y)));
    let check = match property {
        Property::LeftStarSymmetric => {
            require_compatible(a, &rels[0])?;
            let v = is_left_star_symmetric(ctx, r)?;
            let mut c = Check::from_bool("left-star-symmetric", v.holds, "(a,b) in R with a null implies (b,a) in R")
                .detail(format!("R* = {}", star(ctx, r)?));
            if let Some((x, y)) = v.witness {
                c = c.witness(format!("({x},{y})"));
            }
            c
        }
        Property::StarSymmetric => {
            require_compatible(a, &rels[0])?;
            let v = is_star_symmetric(ctx, r)?;
            let mut c = Check::from_bool("star-symmetric", v.holds, "R and its opposite are both left star-symmetric")
                .detail(format!("R* = {}", star(ctx, r)?))
                .detail(format!("(R°)* = {}", star(ctx, &opposite(r))?));
            if let Some((x, y)) = v.witness {
                let side = if v.in_opposite { ",side=opposite" } else { "" };
                c = c.witness(format!("({x},{y}){side}"));
            }
            c
        }
        Property::GraphLeftStarSymmetric => {
            require_compatible(a, &rels[0])?;
            let (g0, g1) = relation_graph(a, r, budgets)?;
            let v = graph_left_star_symmetric(ctx, &g0, &g1, budgets.sigma_nodes)?;
            let summary = "a homomorphism σ between the N-kernels of the projections swaps them";
            match v {
                GraphVerdict::Symmetric { sigma } => {
                    let pairs: Vec<(usize, usize)> = r.pairs().collect();
                    let shown: Vec<String> = sigma
                        .iter()
                        .map(|&(t, u)| format!("({},{})->({},{})", pairs[t].0, pairs[t].1, pairs[u].0, pairs[u].1))
                        .collect();
                    Check::new("graph-left-star-symmetric", Verdict::Pass, summary)
                        .detail(format!("σ = {{{}}}", shown.join(",")))
                }
                GraphVerdict::NotSymmetric { empty_candidates } => {
                    let mut c = Check::new("graph-left-star-symmetric", Verdict::Fail, summary);
                    if let Some(t) = empty_candidates {
                        let (x, y) = r.pairs().nth(t).expect("kernel element is a pair of R");
                        c = c.witness(format!("({x},{y})")).detail(format!("no admissible image for the pair ({x},{y})"));
                    }
                    c
                }
                GraphVerdict::Inconclusive { nodes } => {
                    Check::new("graph-left-star-symmetric", Verdict::Inconclusive, summary)
                        .detail(format!("search stopped after {nodes} assignments"))
                }
            }
        }
        Property::StarPermutes => {
            require_compatible(a, &rels[0])?;
            require_compatible(a, &rels[1])?;
            let s = &rels[1].relation;
            let v = check_star_permutes(ctx, r, s)?;
            let mut c = Check::from_bool("star-permutes", v.holds, "RS* = SR*")
                .detail(format!("RS* = {}", v.rs))
                .detail(format!("SR* = {}", v.sr));
            if let Some((x, y)) = v.witness {
                c = c.witness(format!("({x},{y})"));
            }
            c
        }
        Property::Reflexive => {
            let w = first_missing(r, (0..n).map(|x| (x, x)));
            witnessed(Check::from_bool("reflexive", w.is_none(), "(a,a) in R for every a"), w)
        }
        Property::Symmetric => {
            let w = r.pairs().find(|&(x, y)| !r.contains(y, x)).map(|(x, y)| (y, x));
            witnessed(Check::from_bool("symmetric", w.is_none(), "(a,b) in R implies (b,a) in R"), w)
        }
        Property::Transitive => {
            let w = first_missing(
                r,
                all_pairs().filter(|&(x, z)| (0..n).any(|y| r.contains(x, y) && r.contains(y, z))),
            );
            witnessed(Check::from_bool("transitive", w.is_none(), "(a,b) and (b,c) in R imply (a,c) in R"), w)
        }
        Property::Compatible => {
            let p = relation_predicates(r)?;
            Check::from_bool("compatible", p.compatible, "R is closed under every operation")
        }
    };
    report.checks.push(check);
    Ok(report)
}

fn witnessed(c: Check, missing: Option<(usize, usize)>) -> Check {
    match missing {
        Some((x, y)) => c.witness(format!("({x},{y})")).detail(format!("({x},{y}) is not in R")),
        None => c,
    }
}

/// `R` as a graph: the pair subalgebra of `A × A` with its two projections.
fn relation_graph(a: &Arc<FiniteAlgebra>, r: &Relation, budgets: &Budgets) -> Result<(Homomorphism, Homomorphism), Error> {
    let square = product(&[a, a], budgets.max_power_size)?;
    let members = Subset::from_elements(square.size(), r.bits().ones())?;
    let g = Arc::new(square.restrict("R", &members)?);
    let n = a.size();
    let g0 = Homomorphism::new(g.clone(), a.clone(), members.elements().iter().map(|p| p / n).collect())?;
    let g1 = Homomorphism::new(g, a.clone(), members.elements().iter().map(|p| p % n).collect())?;
    Ok((g0, g1))
}

/// Tracks the first counterexample and the number of instances of one identity.
struct Tally {
    examined: usize,
    witness: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Self {
            examined: 0,
            witness: None,
        }
    }

    fn record(&mut self, holds: bool, witness: impl FnOnce() -> String) {
        self.examined += 1;
        if !holds && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    fn check(self, name: &str, summary: &str, truncated: bool, unit: &str) -> Check {
        let verdict = match (&self.witness, truncated) {
            (Some(_), _) => Verdict::Fail,
            (None, true) => Verdict::Inconclusive,
            (None, false) => Verdict::Pass,
        };
        let mut c = Check::new(name, verdict, format!("{summary} ({unit}: {})", self.examined));
        if let Some(w) = self.witness {
            c = c.witness(w);
        }
        c
    }
}

fn map_string(f: &Homomorphism) -> String {
    let parts: Vec<String> = f.map().iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

/// Morphisms of the context: in a pointed context they fix the base point.
fn admissible(ctx: &IdealContext, a: &FiniteAlgebra, f: &Homomorphism) -> Result<bool, Error> {
    Ok(match ctx.base_point(a)? {
        Some(b) => f.apply(b) == b,
        None => true,
    })
}

pub fn check_identities(a: &Arc<FiniteAlgebra>, ctx: &IdealContext, budgets: &Budgets) -> Result<Report, CliError> {
    ctx.validate(a)?;
    let enumeration = starperm::checkers::enumerate_reflexive_compatible(a, budgets)?;
    let mut rels = enumeration.relations.clone();
    let mut seen: HashSet<Vec<usize>> = rels.iter().map(|r| r.bits().ones().collect()).collect();
    for r in &enumeration.relations {
        let s = star(ctx, r)?;
        if seen.insert(s.bits().ones().collect()) {
            rels.push(s);
        }
    }
    let (homs, homs_complete) = homomorphisms(a, a, budgets.max_relations)?;
    let mut morphisms = Vec::new();
    for f in homs {
        if admissible(ctx, a, &f)? {
            morphisms.push(f);
        }
    }
    let rel_truncated = enumeration.truncated;
    let hom_truncated = !homs_complete;

    let mut report = Report::default();
    report.header.push(describe(a));
    report.header.push(format!("context {ctx}"));
    report.header.push(format!(
        "compatible relations (reflexive ones and their stars): {}, endomorphisms: {}",
        rels.len(),
        morphisms.len()
    ));

    let k = null_class(ctx, a)?;
    let mut t = Tally::new();
    let id = Homomorphism::identity(a.clone());
    t.record(n_kernel(ctx, &id)? == k && a.is_closed(&k).is_ok(), || k.to_string());
    report.checks.push(t.check("null-class", "the null class is the N-kernel of the identity and a subalgebra", false, "algebras"));

    let mut t = Tally::new();
    for r in &rels {
        let s = star(ctx, r)?;
        t.record(star_via_pullback(ctx, r)? == s, || format!("R={r}"));
    }
    report.checks.push(t.check("star-pullback", "R* equals the pullback construction", rel_truncated, "relations"));

    let mut t = Tally::new();
    for r in &rels {
        let s = star(ctx, r)?;
        t.record(s.is_subset(r) && star(ctx, &s)? == s, || format!("R={r}"));
    }
    report.checks.push(t.check("star-idempotent", "R* is contained in R and (R*)* = R*", rel_truncated, "relations"));

    let mut t = Tally::new();
    let stars: Vec<Relation> = rels.iter().map(|s| star(ctx, s)).collect::<Result<_, _>>()?;
    for r in &rels {
        for (s, s_star) in rels.iter().zip(&stars) {
            let lhs = star(ctx, &compose(s, r)?)?;
            t.record(lhs == compose(s_star, r)?, || format!("R={r},S={s}"));
        }
    }
    report.checks.push(t.check("star-composite", "(RS)* = RS*", rel_truncated, "ordered pairs"));

    let mut t = Tally::new();
    for r in &rels {
        let lhs = is_star_symmetric(ctx, r)?.holds;
        t.record(lhs == (star(ctx, r)? == star(ctx, &opposite(r))?), || format!("R={r}"));
    }
    report.checks.push(t.check("star-symmetry-unfolding", "R is star-symmetric exactly when R* = (R°)*", rel_truncated, "relations"));

    if *ctx == IdealContext::Total {
        let mut t = Tally::new();
        for r in &rels {
            let symmetric = relation_predicates(r)?.symmetric;
            t.record(star(ctx, r)? == *r && is_left_star_symmetric(ctx, r)?.holds == symmetric, || format!("R={r}"));
        }
        report.checks.push(t.check("total-collapse", "R* = R and left star-symmetry is symmetry", rel_truncated, "relations"));
    }

    let mut t = Tally::new();
    for f in &morphisms {
        t.record(kernel_pair(f) == inverse_image(f, &diagonal(a))?, || format!("f={}", map_string(f)));
    }
    report.checks.push(t.check("kernel-pair", "Eq(f) is the inverse image of the diagonal", hom_truncated, "endomorphisms"));

    let mut t = Tally::new();
    for f in &morphisms {
        for (s, s_star) in rels.iter().zip(&stars) {
            let lhs = star(ctx, &inverse_image(f, s)?)?;
            let rhs = star(ctx, &inverse_image(f, s_star)?)?;
            t.record(lhs == rhs, || format!("f={},S={s}", map_string(f)));
        }
    }
    report.checks.push(t.check(
        "inverse-image-star",
        "(f⁻¹S)* = (f⁻¹(S*))*",
        rel_truncated || hom_truncated,
        "instances",
    ));

    let mut t = Tally::new();
    for q in morphisms.iter().filter(|q| q.is_surjective()) {
        for f in &morphisms {
            let lhs = n_kernel(ctx, &q.then(f)?)?;
            t.record(lhs == q.preimage(&n_kernel(ctx, f)?), || format!("q={},f={}", map_string(q), map_string(f)));
        }
    }
    report.checks.push(t.check(
        "pullback-stability",
        "the N-kernel of fq is the preimage under a surjection q of the N-kernel of f",
        hom_truncated,
        "instances",
    ));

    let mut t = Tally::new();
    for f in &morphisms {
        for g in &morphisms {
            let either = is_null_morphism(ctx, f)? || is_null_morphism(ctx, g)?;
            t.record(!either || is_null_morphism(ctx, &f.then(g)?)?, || {
                format!("f={},g={}", map_string(f), map_string(g))
            });
        }
    }
    report.checks.push(t.check("ideal-law", "a composite with a null factor is null", hom_truncated, "composable pairs"));

    let mut t = Tally::new();
    let summary = if *ctx == IdealContext::Total {
        "saturating morphisms are the surjections"
    } else {
        "every morphism is saturating"
    };
    for f in &morphisms {
        let expected = *ctx != IdealContext::Total || f.is_surjective();
        t.record(is_saturating(ctx, f)? == expected, || format!("f={}", map_string(f)));
    }
    report.checks.push(t.check("saturation", summary, hom_truncated, "endomorphisms"));

    Ok(report)
}

fn term_check(name: String, found: &TermOperation, identities: &[starperm::terms::Identity], summary: String) -> Result<Check, CliError> {
    let verified = verify_term_identities(found, identities)?;
    let table: Vec<String> = found.table().iter().map(|v| v.to_string()).collect();
    let mut c = Check::from_bool(name, verified.holds, summary)
        .witness(found.render())
        .detail(format!("table [{}]", table.join(" ")));
    if let Some((k, env)) = verified.failure {
        c = c.detail(format!("identity {} fails at {env:?}", k + 1));
    }
    Ok(c)
}

pub fn find_maltsev(a: &Arc<FiniteAlgebra>, budgets: &Budgets) -> Result<Report, CliError> {
    let m = find_maltsev_term(a, budgets.clone_tables)?;
    let mut report = Report::default();
    report.header.push(describe(a));
    report.header.push(format!(
        "ternary clone: {} term operations generated, {}",
        m.clone_size,
        if m.clone_complete { "complete" } else { "search stopped before closure" }
    ));
    let summary = "p(x, x, y) = y and p(x, y, y) = x".to_string();
    let check = match &m.term {
        TermSearch::Found(t) => term_check("maltsev".into(), t, &maltsev_identities(a.signature())?, summary)?,
        TermSearch::Absent => Check::new("maltsev", Verdict::Fail, summary)
            .witness(format!("clone-size={}", m.clone_size))
            .detail(format!(
                "the complete ternary clone of size {} contains no such term",
                m.clone_size
            )),
        TermSearch::Inconclusive => Check::new("maltsev", Verdict::Inconclusive, summary)
            .detail(format!("clone budget exhausted after {} term operations", m.clone_size)),
    };
    report.checks.push(check);
    report.notes.push(format!(
        "verdicts concern the variety generated by {}",
        a.name()
    ));
    Ok(report)
}

pub fn find_e_subtractive(a: &Arc<FiniteAlgebra>, ctx: &IdealContext, budgets: &Budgets) -> Result<Report, CliError> {
    ctx.validate(a)?;
    let targets: Vec<usize> = match ctx {
        IdealContext::Total => {
            return Err(CliError(
                "E-subtractive terms need a `proto` or `pointed:<constant>` context".into(),
            ))
        }
        IdealContext::Pointed(_) => vec![ctx.base_point(a)?.expect("pointed")],
        IdealContext::ProtoPointed => null_class(ctx, a)?.elements().to_vec(),
    };
    let r = find_e_subtractive_terms_at(a, &targets, budgets.clone_tables)?;
    let mut report = Report::default();
    report.header.push(describe(a));
    report.header.push(format!("context {ctx}, E = {}", a.constants_subalgebra()));
    report.header.push(format!(
        "binary clone: {} term operations generated, {}",
        r.clone_size,
        if r.clone_complete { "complete" } else { "search stopped before closure" }
    ));
    for (e, search) in &r.terms {
        let name = format!("e-subtractive[e={e}]");
        let summary = format!("s(x, x) = {e} and s(x, {e}) = x");
        let check = match search {
            TermSearch::Found(t) => term_check(name, t, &e_subtractive_identities(a.signature(), *e)?, summary)?,
            TermSearch::Absent => Check::new(name, Verdict::Fail, summary)
                .witness(format!("clone-size={}", r.clone_size))
                .detail(format!(
                    "the complete binary clone of size {} contains no such term",
                    r.clone_size
                )),
            TermSearch::Inconclusive => Check::new(name, Verdict::Inconclusive, summary)
                .detail(format!("clone budget exhausted after {} term operations", r.clone_size)),
        };
        report.checks.push(check);
    }
    report.notes.push(format!(
        "verdicts concern the variety generated by {}",
        a.name()
    ));
    Ok(report)
}

pub fn congruences(a: &Arc<FiniteAlgebra>) -> Result<Report, CliError> {
    let mut report = Report::default();
    report.header.push(describe(a));
    match all_congruences(a, starperm::algebra::DEFAULT_CONGRUENCE_BUDGET) {
        Ok(cs) => {
            for c in &cs {
                report.items.push(("congruence".into(), c.to_string()));
            }
            report.checks.push(Check::new(
                "congruence-enumeration",
                Verdict::Pass,
                format!("{} congruences", cs.len()),
            ));
        }
        Err(Error::Budget { needed, limit, .. }) => {
            report.checks.push(
                Check::new("congruence-enumeration", Verdict::Inconclusive, "carrier too large")
                    .detail(format!("size {needed} exceeds the enumeration budget {limit}")),
            );
        }
        Err(e) => return Err(e.into()),
    }
    Ok(report)
}
