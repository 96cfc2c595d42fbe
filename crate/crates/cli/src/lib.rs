//! The `nx` command line: Betti tables, relations, minimal models and the
//! verification suites.

pub mod fixtures;
pub mod suites;

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nx_homotopy::moduli::{betti_table, q_polynomials, relation_subspace_e, full_generators, ModuliError};
use nx_homotopy::sp::render_decomposition;
use nx_homotopy::sullivan::{SullivanError, DEFAULT_MONOMIAL_BUDGET};
use nx_homotopy::Rational;
use serde::Serialize;
use thiserror::Error;

use suites::{Suite, SuiteConfig};

pub const BUDGET_ENV: &str = "NX_MONOMIAL_BUDGET";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Moduli(#[from] ModuliError),
    #[error(transparent)]
    Sullivan(#[from] SullivanError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

impl From<nx_homotopy::sp::SpError> for CliError {
    fn from(e: nx_homotopy::sp::SpError) -> Self {
        CliError::Sullivan(SullivanError::Sp(e))
    }
}

#[derive(Parser, Debug)]
#[command(name = "nx", version, about = "Rational homotopy of the rank-2 moduli space of bundles over a curve")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Betti numbers of the cohomology ring, computed two ways.
    Betti(BettiArgs),
    /// The relations q^1, q^2, q^3 and the relation space of the full ring.
    Relations(RelationsArgs),
    /// Build the minimal model stage by stage and report every V^n.
    MinimalModel(RunConfig),
    /// Run a verification suite; exits nonzero if any check fails.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Default)]
pub enum Target {
    /// The full cohomology ring (genus ≥ 2).
    #[default]
    Full,
    /// The invariant subring Q[α,β,γ]/I_g (genus ≥ 1).
    Invariant,
}

#[derive(Args, Debug)]
pub struct BettiArgs {
    #[arg(long)]
    pub genus: u32,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct RelationsArgs {
    #[arg(long)]
    pub genus: u32,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    #[arg(long)]
    pub genus: u32,
    #[arg(long)]
    pub max_degree: u32,
    #[arg(long, value_enum, default_value_t)]
    pub target: Target,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    /// Largest chain-group size (in monomials) a stage may touch.
    #[arg(long, env = BUDGET_ENV, default_value_t = DEFAULT_MONOMIAL_BUDGET)]
    pub budget: u128,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    #[arg(long)]
    pub genus: Option<u32>,
    #[arg(long)]
    pub max_degree: Option<u32>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    #[arg(long, env = BUDGET_ENV, default_value_t = DEFAULT_MONOMIAL_BUDGET)]
    pub budget: u128,
}

/// What a command prints and whether it succeeded.
#[derive(Debug)]
pub struct Outcome {
    pub output: String,
    pub success: bool,
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Betti(a) => cmd_betti(a),
        Command::Relations(a) => cmd_relations(a),
        Command::MinimalModel(c) => cmd_minimal_model(c),
        Command::Verify(a) => cmd_verify(a),
    }
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

#[derive(Serialize)]
struct BettiJson<'a> {
    betti: &'a [usize],
    cross_check: &'a str,
}

pub fn cmd_betti(a: &BettiArgs) -> Result<Outcome, CliError> {
    if a.genus < 2 {
        return Err(CliError::Usage(format!("the full cohomology ring needs genus ≥ 2, got {}", a.genus)));
    }
    let t = betti_table::<Rational>(a.genus)?;
    let verdict = if t.agree() { "ok" } else { "mismatch" };
    let output = match a.format {
        Format::Json => serde_json::to_string(&BettiJson { betti: &t.quotient, cross_check: verdict })?,
        Format::Text => format!(
            "{}\nquotient basis:    {}\ndecomposition:     {}\ncross-check: {verdict}",
            join(&t.quotient),
            join(&t.quotient),
            join(&t.decomposition)
        ),
    };
    if !t.agree() {
        return Err(CliError::Moduli(ModuliError::ValidationFailure(format!(
            "Betti paths disagree: {:?} vs {:?}",
            t.quotient, t.decomposition
        ))));
    }
    Ok(Outcome { output, success: true })
}

#[derive(Serialize)]
struct RelationJson {
    name: String,
    degree: u32,
    polynomial: String,
}

#[derive(Serialize)]
struct RelationsJson {
    genus: u32,
    q: Vec<RelationJson>,
    relation_space: Vec<String>,
}

pub fn cmd_relations(a: &RelationsArgs) -> Result<Outcome, CliError> {
    if a.genus < 1 {
        return Err(CliError::Usage("genus must be at least 1".into()));
    }
    let q = q_polynomials::<Rational>(a.genus);
    let rendered = q.render();
    let e = if a.genus >= 2 {
        let full = full_generators(a.genus);
        relation_subspace_e::<Rational>(a.genus)?.iter().map(|x| full.render(x)).collect()
    } else {
        Vec::new()
    };
    let rows: Vec<RelationJson> = (0..3)
        .map(|i| RelationJson { name: format!("q{}", i + 1), degree: q.degrees()[i], polynomial: rendered[i].clone() })
        .collect();
    let output = match a.format {
        Format::Json => serde_json::to_string(&RelationsJson { genus: a.genus, q: rows, relation_space: e })?,
        Format::Text => {
            let mut s = format!("genus {}: degrees {}, {}, {}\n", a.genus, q.degrees()[0], q.degrees()[1], q.degrees()[2]);
            for r in &rows {
                let _ = writeln!(s, "{} (degree {}) = {}", r.name, r.degree, r.polynomial);
            }
            if !e.is_empty() {
                let _ = writeln!(s, "relation space ({} elements):", e.len());
                for x in &e {
                    let _ = writeln!(s, "  {x}");
                }
            }
            s.trim_end().to_string()
        }
    };
    Ok(Outcome { output, success: true })
}

pub fn cmd_minimal_model(c: &RunConfig) -> Result<Outcome, CliError> {
    if c.max_degree < 2 {
        return Err(CliError::Usage("--max-degree must be at least 2".into()));
    }
    let model = match c.target {
        Target::Full if c.genus < 2 => {
            return Err(CliError::Usage(format!("the full cohomology ring needs genus ≥ 2, got {}", c.genus)))
        }
        Target::Invariant if c.genus < 1 => return Err(CliError::Usage("genus must be at least 1".into())),
        Target::Full => suites::full_model(c.genus, c.max_degree, c.budget)?,
        Target::Invariant => suites::invariant_model(c.genus, c.max_degree, c.budget)?,
    };
    let output = match c.format {
        Format::Json => serde_json::to_string_pretty(&model.dump()?)?,
        Format::Text => {
            let mut s = format!(
                "genus {}, {} target, stages 2..{}\n{:>4} {:>6} {:>6} {:>6}  decomposition\n",
                c.genus,
                match c.target {
                    Target::Full => "full",
                    Target::Invariant => "invariant",
                },
                c.max_degree,
                "n",
                "dim",
                "C",
                "N"
            );
            for r in model.equivariant_report()? {
                let _ = writeln!(
                    s,
                    "{:>4} {:>6} {:>6} {:>6}  {}",
                    r.degree,
                    r.dim,
                    r.c_dim,
                    r.n_dim,
                    render_decomposition(&r.decomposition)
                );
            }
            if c.target == Target::Invariant || model.gens().len() <= 12 {
                let _ = writeln!(s, "generators:");
                let tg = model.target().gens();
                for i in 0..model.gens().len() {
                    let g = model.gens().get(i);
                    let _ = writeln!(
                        s,
                        "  {} (degree {}): d = {}, ρ = {}",
                        g.name,
                        g.degree,
                        model.gens().render(model.d_image(i)),
                        tg.render(model.rho_image(i))
                    );
                }
            }
            s.trim_end().to_string()
        }
    };
    Ok(Outcome { output, success: true })
}

pub fn cmd_verify(a: &VerifyArgs) -> Result<Outcome, CliError> {
    let cfg = SuiteConfig { genus: a.genus, max_degree: a.max_degree, budget: a.budget };
    let reports = suites::run_suite(a.suite, &cfg)?;
    let success = reports.iter().all(|r| r.passed());
    let output = match a.format {
        Format::Json => serde_json::to_string_pretty(&reports)?,
        Format::Text => {
            let mut s = String::new();
            for r in &reports {
                let name = r.suite.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
                let _ = writeln!(s, "== {name}");
                for c in &r.checks {
                    let _ = writeln!(s, "{}", c.render());
                }
                let _ = writeln!(s, "{}  {name}", if r.passed() { "PASS" } else { "FAIL" });
            }
            s.trim_end().to_string()
        }
    };
    Ok(Outcome { output, success })
}
