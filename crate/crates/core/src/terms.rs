//! Term operations, free-algebra models and term synthesis.
//!
//! The `n`-generated free algebra of the variety generated by a finite algebra
//! `A` is realized as the clone of `n`-ary term operations of `A`: the
//! subalgebra of `A^(A^n)` generated by the projections and the constants. An
//! identity that holds for a term operation of `A` holds throughout the
//! variety generated by `A`, so a table found here is a certificate for that
//! variety, and an exhausted clone proves no term exists.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::algebra::{table_len, FiniteAlgebra, Homomorphism, Signature};
use crate::error::{Error, Result};
use crate::tuples;

/// Default ceiling on the number of distinct term operations generated.
pub const DEFAULT_CLONE_BUDGET: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(usize),
    Apply(usize, Vec<Term>),
}

/// `x`, `y`, `z`, `w`, then `x4`, `x5`, ...
pub fn variable_name(i: usize) -> String {
    match i {
        0 => "x".into(),
        1 => "y".into(),
        2 => "z".into(),
        3 => "w".into(),
        _ => format!("x{i}"),
    }
}

fn variable_index(name: &str) -> Option<usize> {
    match name {
        "x" => Some(0),
        "y" => Some(1),
        "z" => Some(2),
        "w" => Some(3),
        _ => name
            .strip_prefix('x')
            .and_then(|d| d.parse::<usize>().ok())
            .filter(|&i| i >= 4),
    }
}

impl Term {
    pub fn eval(&self, a: &FiniteAlgebra, env: &[usize]) -> usize {
        match self {
            Term::Var(i) => env[*i],
            Term::Apply(s, args) => {
                let values: Vec<usize> = args.iter().map(|t| t.eval(a, env)).collect();
                a.apply(*s, &values)
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::Apply(_, args) => 1 + args.iter().map(Term::depth).max().unwrap_or(0),
        }
    }

    pub fn display<'a>(&'a self, signature: &'a Signature) -> TermDisplay<'a> {
        TermDisplay {
            term: self,
            signature,
        }
    }
}

/// Prefix rendering: `or(x, not(y))`; constants print bare.
pub struct TermDisplay<'a> {
    term: &'a Term,
    signature: &'a Signature,
}

impl fmt::Display for TermDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.term {
            Term::Var(i) => write!(f, "{}", variable_name(*i)),
            Term::Apply(s, args) => {
                write!(f, "{}", self.signature.symbols()[*s].name)?;
                if !args.is_empty() {
                    write!(f, "(")?;
                    for (i, arg) in args.iter().enumerate() {
                        if i > 0 {
                            write!(f, ", ")?;
                        }
                        write!(f, "{}", arg.display(self.signature))?;
                    }
                    write!(f, ")")?;
                }
                Ok(())
            }
        }
    }
}

/// An `n`-ary term operation of a finite algebra together with a term producing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermOperation {
    algebra: Arc<FiniteAlgebra>,
    arity: usize,
    table: Vec<usize>,
    term: Term,
}

impl TermOperation {
    /// Evaluates `term` on every `arity`-tuple.
    pub fn from_term(algebra: Arc<FiniteAlgebra>, arity: usize, term: Term) -> Result<Self> {
        check_term(&term, algebra.signature(), arity)?;
        let mut table = Vec::with_capacity(table_len(algebra.size(), arity)?);
        tuples::for_each(arity, algebra.size(), |env| table.push(term.eval(&algebra, env)));
        Ok(Self {
            algebra,
            arity,
            table,
            term,
        })
    }

    pub fn algebra(&self) -> &Arc<FiniteAlgebra> {
        &self.algebra
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn term(&self) -> &Term {
        &self.term
    }

    pub fn value(&self, args: &[usize]) -> usize {
        self.table[tuples::encode(args, self.algebra.size())]
    }

    pub fn render(&self) -> String {
        self.term.display(self.algebra.signature()).to_string()
    }
}

fn check_term(term: &Term, signature: &Signature, arity: usize) -> Result<()> {
    match term {
        Term::Var(i) if *i < arity => Ok(()),
        Term::Var(i) => Err(Error::MalformedIdentity(format!(
            "variable {} outside arity {arity}",
            variable_name(*i)
        ))),
        Term::Apply(s, args) => {
            let sym = signature
                .symbols()
                .get(*s)
                .ok_or_else(|| Error::UnknownSymbol(format!("#{s}")))?;
            if sym.arity != args.len() {
                return Err(Error::MalformedIdentity(format!(
                    "`{}` takes {} arguments, got {}",
                    sym.name,
                    sym.arity,
                    args.len()
                )));
            }
            args.iter().try_for_each(|a| check_term(a, signature, arity))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Derivation {
    Projection(usize),
    Apply(usize, Vec<usize>),
}

/// The clone of `n`-ary term operations, generated breadth-first.
#[derive(Debug, Clone)]
pub struct FreeAlgebraModel {
    base: Arc<FiniteAlgebra>,
    generators: usize,
    tables: Vec<Vec<usize>>,
    derivations: Vec<Derivation>,
    index: HashMap<Vec<usize>, usize>,
    complete: bool,
}

impl FreeAlgebraModel {
    pub fn base(&self) -> &Arc<FiniteAlgebra> {
        &self.base
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn len(&self) -> usize {
        self.tables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tables.is_empty()
    }

    /// Whether the breadth-first closure reached its fixpoint within budget.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn table(&self, i: usize) -> &[usize] {
        &self.tables[i]
    }

    pub fn tables(&self) -> impl Iterator<Item = &[usize]> {
        self.tables.iter().map(Vec::as_slice)
    }

    pub fn find(&self, table: &[usize]) -> Option<usize> {
        self.index.get(table).copied()
    }

    /// The first derivation recorded for element `i`, as a syntax tree.
    pub fn term(&self, i: usize) -> Term {
        match &self.derivations[i] {
            Derivation::Projection(v) => Term::Var(*v),
            Derivation::Apply(s, args) => Term::Apply(*s, args.iter().map(|&a| self.term(a)).collect()),
        }
    }

    pub fn operation(&self, i: usize) -> TermOperation {
        TermOperation {
            algebra: self.base.clone(),
            arity: self.generators,
            table: self.tables[i].clone(),
            term: self.term(i),
        }
    }

    /// The model as an algebra on `{0..len}`, operations acting pointwise on tables.
    pub fn as_algebra(&self) -> Result<FiniteAlgebra> {
        if !self.complete {
            return Err(Error::Budget {
                what: "free algebra model (incomplete clone)",
                needed: self.len() + 1,
                limit: self.len(),
            });
        }
        let n = self.len();
        let sig = self.base.signature();
        let mut tables = Vec::with_capacity(sig.len());
        let mut columns: Vec<&[usize]> = Vec::new();
        for (s, sym) in sig.symbols().iter().enumerate() {
            let mut table = Vec::with_capacity(table_len(n, sym.arity)?);
            let mut out = Vec::new();
            tuples::for_each(sym.arity, n, |idx| {
                columns.clear();
                columns.extend(idx.iter().map(|&i| self.tables[i].as_slice()));
                pointwise(&self.base, s, &columns, self.table_width(), &mut out);
                table.push(self.index[&out]);
            });
            tables.push(table);
        }
        FiniteAlgebra::new(
            format!("F{}({})", self.generators, self.base.name()),
            sig.clone(),
            n,
            tables,
        )
    }

    fn table_width(&self) -> usize {
        self.tables.first().map_or(0, Vec::len)
    }
}

fn pointwise(a: &FiniteAlgebra, symbol: usize, columns: &[&[usize]], width: usize, out: &mut Vec<usize>) {
    out.clear();
    let mut args = Vec::with_capacity(columns.len());
    for row in 0..width {
        args.clear();
        args.extend(columns.iter().map(|c| c[row]));
        out.push(a.apply(symbol, &args));
    }
}

/// Breadth-first closure of the projections and constants under the basic
/// operations applied pointwise, stopping once `budget` tables are known.
pub fn free_term_operations(a: &Arc<FiniteAlgebra>, generators: usize, budget: usize) -> Result<FreeAlgebraModel> {
    generate(a, generators, budget, |_| false)
}

/// Generates the clone in breadth-first order, calling `halt` on every new
/// table as it is discovered; generation stops early when `halt` returns true.
///
/// Discovery order is the final insertion order, so the first table accepted
/// by a predicate is the same whether or not generation halts early.
fn generate(
    a: &Arc<FiniteAlgebra>,
    generators: usize,
    budget: usize,
    mut halt: impl FnMut(&[usize]) -> bool,
) -> Result<FreeAlgebraModel> {
    let width = table_len(a.size(), generators)?;
    let mut model = FreeAlgebraModel {
        base: a.clone(),
        generators,
        tables: Vec::new(),
        derivations: Vec::new(),
        index: HashMap::new(),
        complete: false,
    };
    let mut rows = vec![vec![0; generators]; width];
    for (i, row) in rows.iter_mut().enumerate() {
        tuples::decode(i, a.size(), row);
    }
    let mut seeds: Vec<(Vec<usize>, Derivation)> = (0..generators)
        .map(|v| (rows.iter().map(|r| r[v]).collect(), Derivation::Projection(v)))
        .collect();
    for c in a.signature().constants() {
        seeds.push((vec![a.constant(c); width], Derivation::Apply(c, Vec::new())));
    }
    for (table, d) in seeds {
        if model.index.contains_key(&table) {
            continue;
        }
        if model.len() >= budget {
            return Ok(model);
        }
        let stop = halt(&table);
        model.index.insert(table.clone(), model.tables.len());
        model.tables.push(table);
        model.derivations.push(d);
        if stop {
            return Ok(model);
        }
    }

    let mut lo = 0;
    let mut out = Vec::with_capacity(width);
    loop {
        let hi = model.len();
        if lo == hi {
            model.complete = true;
            return Ok(model);
        }
        let mut fresh: Vec<(Vec<usize>, Derivation)> = Vec::new();
        let mut stopped = false;
        let mut columns: Vec<&[usize]> = Vec::new();
        for (s, sym) in a.signature().symbols().iter().enumerate() {
            if sym.arity == 0 {
                continue;
            }
            tuples::for_each_touching(sym.arity, lo, hi, |idx| {
                if stopped {
                    return;
                }
                columns.clear();
                columns.extend(idx.iter().map(|&i| model.tables[i].as_slice()));
                pointwise(a, s, &columns, width, &mut out);
                if model.index.contains_key(&out) {
                    return;
                }
                if hi + fresh.len() >= budget {
                    stopped = true;
                    return;
                }
                model.index.insert(out.clone(), hi + fresh.len());
                stopped = halt(&out);
                fresh.push((out.clone(), Derivation::Apply(s, idx.to_vec())));
            });
        }
        drop(columns);
        for (table, d) in fresh {
            model.tables.push(table);
            model.derivations.push(d);
        }
        if stopped {
            return Ok(model);
        }
        lo = hi;
    }
}

/// Outcome of searching a clone for a term with prescribed identities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TermSearch {
    Found(TermOperation),
    /// The complete clone has no such table.
    Absent,
    /// The clone was cut off by the budget before a table was found.
    Inconclusive,
}

impl TermSearch {
    pub fn found(&self) -> Option<&TermOperation> {
        match self {
            TermSearch::Found(t) => Some(t),
            _ => None,
        }
    }
}

type TablePredicate<'a> = Box<dyn Fn(&[usize]) -> bool + 'a>;

/// Generates the clone until every predicate has accepted some table; returns
/// the model and, per predicate, the first accepted table in generation order.
fn search<'a>(
    a: &Arc<FiniteAlgebra>,
    generators: usize,
    budget: usize,
    predicates: &[TablePredicate<'a>],
) -> Result<(FreeAlgebraModel, Vec<TermSearch>)> {
    let mut hits: Vec<Option<usize>> = vec![None; predicates.len()];
    let mut seen = 0;
    let model = generate(a, generators, budget, |table| {
        for (hit, accept) in hits.iter_mut().zip(predicates) {
            if hit.is_none() && accept(table) {
                *hit = Some(seen);
            }
        }
        seen += 1;
        hits.iter().all(Option::is_some)
    })?;
    let outcomes = hits
        .into_iter()
        .map(|hit| match hit {
            Some(i) => TermSearch::Found(model.operation(i)),
            None if model.complete => TermSearch::Absent,
            None => TermSearch::Inconclusive,
        })
        .collect();
    Ok((model, outcomes))
}

#[derive(Debug, Clone)]
pub struct ESubtractiveReport {
    pub algebra: String,
    pub clone_size: usize,
    pub clone_complete: bool,
    /// One entry per element `e` of the constants-generated subalgebra.
    pub terms: Vec<(usize, TermSearch)>,
}

impl ESubtractiveReport {
    pub fn succeeded(&self) -> bool {
        self.terms.iter().all(|(_, t)| matches!(t, TermSearch::Found(_)))
    }

    pub fn refuted(&self) -> bool {
        self.terms.iter().any(|(_, t)| matches!(t, TermSearch::Absent))
    }
}

/// For each `e` in the subalgebra generated by the constants, the first binary
/// term operation with `s(a, a) = e` and `s(a, e) = a` for every `a`.
pub fn find_e_subtractive_terms(a: &Arc<FiniteAlgebra>, budget: usize) -> Result<ESubtractiveReport> {
    let targets = a.constants_subalgebra().elements().to_vec();
    find_e_subtractive_terms_at(a, &targets, budget)
}

/// As [`find_e_subtractive_terms`], for the listed elements of `E` only.
pub fn find_e_subtractive_terms_at(a: &Arc<FiniteAlgebra>, targets: &[usize], budget: usize) -> Result<ESubtractiveReport> {
    if !a.signature().has_constants() {
        return Err(Error::InvalidContext(format!(
            "`{}` has no constants; E-subtractivity needs a nonempty set of constants",
            a.name()
        )));
    }
    if let Some(&e) = targets.iter().find(|&&e| !a.constants_subalgebra().contains(e)) {
        return Err(Error::InvalidContext(format!(
            "{e} is not in the subalgebra generated by the constants of `{}`",
            a.name()
        )));
    }
    let n = a.size();
    let targets = targets.to_vec();
    let predicates: Vec<TablePredicate> = targets
        .iter()
        .map(|&e| -> TablePredicate { Box::new(move |t| (0..n).all(|x| t[x * n + x] == e && t[x * n + e] == x)) })
        .collect();
    let (model, outcomes) = search(a, 2, budget, &predicates)?;
    let terms = targets.into_iter().zip(outcomes).collect();
    Ok(ESubtractiveReport {
        algebra: a.name().to_string(),
        clone_size: model.len(),
        clone_complete: model.complete,
        terms,
    })
}

#[derive(Debug, Clone)]
pub struct MaltsevReport {
    pub algebra: String,
    pub clone_size: usize,
    pub clone_complete: bool,
    pub term: TermSearch,
}

/// First ternary term operation with `p(a, a, b) = b` and `p(a, b, b) = a`.
pub fn find_maltsev_term(a: &Arc<FiniteAlgebra>, budget: usize) -> Result<MaltsevReport> {
    let n = a.size();
    let maltsev: TablePredicate =
        Box::new(move |t| (0..n).all(|x| (0..n).all(|y| t[(x * n + x) * n + y] == y && t[(x * n + y) * n + y] == x)));
    let (model, mut outcomes) = search(a, 3, budget, &[maltsev])?;
    let term = outcomes.pop().expect("one predicate");
    Ok(MaltsevReport {
        algebra: a.name().to_string(),
        clone_size: model.len(),
        clone_complete: model.complete,
        term,
    })
}

/// The reflexive graph `g0, g1: F(x, y) ⇉ F(x)` with `g0: y ↦ e` and
/// `g1: y ↦ x`, split by `δ: F(x) → F(x, y)`.
#[derive(Debug, Clone)]
pub struct CorollaryGraph {
    pub binary: FreeAlgebraModel,
    pub unary: FreeAlgebraModel,
    pub g0: Homomorphism,
    pub g1: Homomorphism,
    pub delta: Homomorphism,
}

pub fn corollary_graph(a: &Arc<FiniteAlgebra>, e: usize, budget: usize) -> Result<CorollaryGraph> {
    a.check_element(e)?;
    if !a.constants_subalgebra().contains(e) {
        return Err(Error::InvalidContext(format!(
            "{e} is not in the subalgebra generated by the constants of `{}`",
            a.name()
        )));
    }
    let binary = free_term_operations(a, 2, budget)?;
    let unary = free_term_operations(a, 1, budget)?;
    let f2 = Arc::new(binary.as_algebra()?);
    let f1 = Arc::new(unary.as_algebra()?);
    let n = a.size();
    let lookup = |table: Vec<usize>| {
        unary.find(&table).ok_or(Error::NotClosed(format!(
            "substitution leaves the unary clone of `{}`",
            a.name()
        )))
    };
    let mut g0 = Vec::with_capacity(binary.len());
    let mut g1 = Vec::with_capacity(binary.len());
    for t in binary.tables() {
        g0.push(lookup((0..n).map(|x| t[x * n + e]).collect())?);
        g1.push(lookup((0..n).map(|x| t[x * n + x]).collect())?);
    }
    let mut delta = Vec::with_capacity(unary.len());
    for u in unary.tables() {
        let lifted: Vec<usize> = (0..n * n).map(|i| u[i / n]).collect();
        delta.push(binary.find(&lifted).ok_or(Error::NotClosed(format!(
            "unary term missing from the binary clone of `{}`",
            a.name()
        )))?);
    }
    Ok(CorollaryGraph {
        g0: Homomorphism::new(f2.clone(), f1.clone(), g0)?,
        g1: Homomorphism::new(f2.clone(), f1.clone(), g1)?,
        delta: Homomorphism::new(f1, f2, delta)?,
        binary,
        unary,
    })
}

/// A term in an identity: variables, element literals, basic operations and
/// the operation under test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Var(usize),
    Element(usize),
    Symbol(usize, Vec<Expr>),
    Subject(Vec<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Identity {
    pub lhs: Expr,
    pub rhs: Expr,
}

impl Identity {
    /// Parses `lhs = rhs`. `subject` names the term operation under test; other
    /// identifiers resolve to signature symbols, then to variables `x, y, z, w, x4, ..`.
    pub fn parse(text: &str, signature: &Signature, subject: &str) -> Result<Self> {
        let (l, r) = text
            .split_once('=')
            .ok_or_else(|| Error::MalformedIdentity(format!("`{text}` has no `=`")))?;
        let p = ExprParser { signature, subject };
        Ok(Identity {
            lhs: p.parse_all(l)?,
            rhs: p.parse_all(r)?,
        })
    }

    fn variables(&self) -> usize {
        fn max_var(e: &Expr) -> usize {
            match e {
                Expr::Var(i) => i + 1,
                Expr::Element(_) => 0,
                Expr::Symbol(_, args) | Expr::Subject(args) => args.iter().map(max_var).max().unwrap_or(0),
            }
        }
        max_var(&self.lhs).max(max_var(&self.rhs))
    }
}

struct ExprParser<'a> {
    signature: &'a Signature,
    subject: &'a str,
}

impl ExprParser<'_> {
    fn parse_all(&self, text: &str) -> Result<Expr> {
        let tokens = lex(text)?;
        let mut pos = 0;
        let e = self.expr(&tokens, &mut pos)?;
        if pos != tokens.len() {
            return Err(Error::MalformedIdentity(format!("trailing input in `{}`", text.trim())));
        }
        Ok(e)
    }

    fn expr(&self, tokens: &[String], pos: &mut usize) -> Result<Expr> {
        let tok = tokens
            .get(*pos)
            .ok_or_else(|| Error::MalformedIdentity("unexpected end of term".into()))?;
        *pos += 1;
        if let Ok(e) = tok.parse::<usize>() {
            return Ok(Expr::Element(e));
        }
        if !tok.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_') {
            return Err(Error::MalformedIdentity(format!("unexpected `{tok}`")));
        }
        let mut args = Vec::new();
        if tokens.get(*pos).is_some_and(|t| t == "(") {
            *pos += 1;
            loop {
                args.push(self.expr(tokens, pos)?);
                match tokens.get(*pos).map(String::as_str) {
                    Some(",") => *pos += 1,
                    Some(")") => {
                        *pos += 1;
                        break;
                    }
                    _ => return Err(Error::MalformedIdentity(format!("unclosed arguments of `{tok}`"))),
                }
            }
        }
        if tok == self.subject {
            return Ok(Expr::Subject(args));
        }
        if let Some(s) = self.signature.index_of(tok) {
            let arity = self.signature.symbols()[s].arity;
            if arity != args.len() {
                return Err(Error::MalformedIdentity(format!(
                    "`{tok}` takes {arity} arguments, got {}",
                    args.len()
                )));
            }
            return Ok(Expr::Symbol(s, args));
        }
        match variable_index(tok) {
            Some(v) if args.is_empty() => Ok(Expr::Var(v)),
            _ => Err(Error::MalformedIdentity(format!("unknown symbol `{tok}`"))),
        }
    }
}

fn lex(text: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut word = String::new();
    for c in text.chars() {
        if c.is_alphanumeric() || c == '_' {
            word.push(c);
            continue;
        }
        if !word.is_empty() {
            out.push(std::mem::take(&mut word));
        }
        match c {
            '(' | ')' | ',' => out.push(c.to_string()),
            c if c.is_whitespace() => {}
            _ => return Err(Error::MalformedIdentity(format!("unexpected character `{c}`"))),
        }
    }
    if !word.is_empty() {
        out.push(word);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub holds: bool,
    /// Index of the first failing identity and the variable assignment refuting it.
    pub failure: Option<(usize, Vec<usize>)>,
}

/// Evaluates both sides of every identity under every assignment of the variables.
pub fn verify_term_identities(t: &TermOperation, identities: &[Identity]) -> Result<IdentityCheck> {
    let a = t.algebra();
    for id in identities {
        validate_expr(&id.lhs, t, a)?;
        validate_expr(&id.rhs, t, a)?;
    }
    for (k, id) in identities.iter().enumerate() {
        let vars = id.variables();
        let mut failure = None;
        tuples::for_each(vars, a.size(), |env| {
            if failure.is_none() && eval_expr(&id.lhs, t, env) != eval_expr(&id.rhs, t, env) {
                failure = Some(env.to_vec());
            }
        });
        if let Some(env) = failure {
            return Ok(IdentityCheck {
                holds: false,
                failure: Some((k, env)),
            });
        }
    }
    Ok(IdentityCheck {
        holds: true,
        failure: None,
    })
}

fn validate_expr(e: &Expr, t: &TermOperation, a: &FiniteAlgebra) -> Result<()> {
    match e {
        Expr::Var(_) => Ok(()),
        Expr::Element(v) => a
            .check_element(*v)
            .map_err(|_| Error::MalformedIdentity(format!("element {v} outside `{}`", a.name()))),
        Expr::Symbol(_, args) => args.iter().try_for_each(|x| validate_expr(x, t, a)),
        Expr::Subject(args) => {
            if args.len() != t.arity() {
                return Err(Error::MalformedIdentity(format!(
                    "operation under test takes {} arguments, got {}",
                    t.arity(),
                    args.len()
                )));
            }
            args.iter().try_for_each(|x| validate_expr(x, t, a))
        }
    }
}

fn eval_expr(e: &Expr, t: &TermOperation, env: &[usize]) -> usize {
    match e {
        Expr::Var(i) => env[*i],
        Expr::Element(v) => *v,
        Expr::Symbol(s, args) => {
            let vals: Vec<usize> = args.iter().map(|x| eval_expr(x, t, env)).collect();
            t.algebra().apply(*s, &vals)
        }
        Expr::Subject(args) => {
            let vals: Vec<usize> = args.iter().map(|x| eval_expr(x, t, env)).collect();
            t.value(&vals)
        }
    }
}

/// `s(x, x) = e` and `s(x, e) = x`, with `s` the operation under test.
pub fn e_subtractive_identities(signature: &Signature, e: usize) -> Result<Vec<Identity>> {
    Ok(vec![
        Identity::parse(&format!("s(x, x) = {e}"), signature, "s")?,
        Identity::parse(&format!("s(x, {e}) = x"), signature, "s")?,
    ])
}

/// `p(x, x, y) = y` and `p(x, y, y) = x`.
pub fn maltsev_identities(signature: &Signature) -> Result<Vec<Identity>> {
    Ok(vec![
        Identity::parse("p(x, x, y) = y", signature, "p")?,
        Identity::parse("p(x, y, y) = x", signature, "p")?,
    ])
}
