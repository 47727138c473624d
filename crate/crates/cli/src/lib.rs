//! The `starperm` command line: argument parsing, input loading and command
//! dispatch. Every command produces a [`Report`] whose verdicts fix the exit
//! status.

mod commands;
pub mod report;

use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use starperm::checkers::Budgets;
use starperm::format::{parse_algebra, parse_relation, ParsedRelation};
use starperm::{Error, FiniteAlgebra, IdealContext};

pub use report::{Check, Report};

#[derive(Debug, Parser)]
#[command(name = "starperm", version, about = "Star-relation calculus and E-subtractivity checks over finite algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Audit the four star-permutability conditions on one algebra.
    Audit(CommonArgs),
    /// Check a property of one relation (or a pair, for `star-permutes`).
    CheckRelation {
        #[command(flatten)]
        common: CommonArgs,
        /// Relation file; give it twice for `star-permutes`.
        #[arg(long, required = true)]
        relation: Vec<PathBuf>,
        #[arg(long, value_enum)]
        property: Property,
    },
    /// Run the relation-calculus identities on an algebra's relations and endomorphisms.
    CheckIdentities(CommonArgs),
    /// Search the clone for characterizing terms.
    FindTerms {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_enum)]
        kind: TermKind,
    },
    /// List all congruences.
    Congruences(CommonArgs),
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    #[arg(long)]
    pub algebra: PathBuf,
    /// `total`, `pointed:<element|constant>` or `proto`.
    #[arg(long)]
    pub context: Option<String>,
    #[arg(long, default_value_t = 4096, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_relations: u64,
    /// Most term operations generated per clone.
    #[arg(long, default_value_t = 1 << 16, value_parser = clap::value_parser!(u64).range(1..))]
    pub clone_budget: u64,
    /// Most assignments tried when searching for a graph symmetry.
    #[arg(long, default_value_t = 1 << 20, value_parser = clap::value_parser!(u64).range(1..))]
    pub sigma_budget: u64,
    /// Print only `CHECK` lines.
    #[arg(long)]
    pub machine: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Property {
    LeftStarSymmetric,
    StarSymmetric,
    GraphLeftStarSymmetric,
    StarPermutes,
    Reflexive,
    Symmetric,
    Transitive,
    Compatible,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TermKind {
    Maltsev,
    ESubtractive,
}

/// Usage and input errors; all exit with status 2.
#[derive(Debug)]
pub struct CliError(pub String);

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError(e.to_string())
    }
}

impl CommonArgs {
    pub fn budgets(&self) -> Budgets {
        Budgets {
            max_relations: self.max_relations as usize,
            clone_tables: self.clone_budget as usize,
            sigma_nodes: self.sigma_budget as usize,
            ..Budgets::default()
        }
    }

    fn context(&self, default: Option<IdealContext>) -> Result<IdealContext, CliError> {
        match (&self.context, default) {
            (Some(text), _) => text.parse().map_err(CliError::from),
            (None, Some(ctx)) => Ok(ctx),
            (None, None) => Err(CliError("--context is required for this command".into())),
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError(format!("{}: {e}", path.display())))
}

/// Errors from a file carry its path; syntax errors then read `path:line:column: message`.
fn located(path: &Path, e: Error) -> CliError {
    match e {
        Error::Syntax { .. } => CliError(format!("{}:{e}", path.display())),
        _ => CliError(format!("{}: {e}", path.display())),
    }
}

pub fn load_algebra(path: &Path) -> Result<Arc<FiniteAlgebra>, CliError> {
    let text = read(path)?;
    parse_algebra(&text).map(Arc::new).map_err(|e| located(path, e))
}

pub fn load_relation(path: &Path, a: &Arc<FiniteAlgebra>) -> Result<ParsedRelation, CliError> {
    let text = read(path)?;
    parse_relation(&text, a).map_err(|e| located(path, e))
}

pub fn execute(cli: &Cli) -> Result<(Report, bool), CliError> {
    match &cli.command {
        Command::Audit(c) => {
            let a = load_algebra(&c.algebra)?;
            Ok((commands::audit(&a, &c.context(None)?, &c.budgets())?, c.machine))
        }
        Command::CheckRelation {
            common,
            relation,
            property,
        } => {
            let a = load_algebra(&common.algebra)?;
            let ctx = common.context(Some(IdealContext::Total))?;
            let rels = relation
                .iter()
                .map(|p| load_relation(p, &a))
                .collect::<Result<Vec<_>, _>>()?;
            Ok((commands::check_relation(&a, &ctx, &rels, *property, &common.budgets())?, common.machine))
        }
        Command::CheckIdentities(c) => {
            let a = load_algebra(&c.algebra)?;
            Ok((commands::check_identities(&a, &c.context(None)?, &c.budgets())?, c.machine))
        }
        Command::FindTerms { common, kind } => {
            let a = load_algebra(&common.algebra)?;
            let report = match kind {
                TermKind::Maltsev => commands::find_maltsev(&a, &common.budgets())?,
                TermKind::ESubtractive => {
                    let ctx = common.context(Some(IdealContext::ProtoPointed))?;
                    commands::find_e_subtractive(&a, &ctx, &common.budgets())?
                }
            };
            Ok((report, common.machine))
        }
        Command::Congruences(c) => {
            let a = load_algebra(&c.algebra)?;
            Ok((commands::congruences(&a)?, c.machine))
        }
    }
}
