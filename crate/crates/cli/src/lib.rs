//! Batch front end for `pbwforge`: problem files in, deterministic reports out.

pub mod commands;
pub mod problem;
pub mod report;
pub mod sampling;
pub mod selftest;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use report::{Exit, Outcome, Report};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Core(#[from] pbwforge::Error),
}

impl CliError {
    pub fn exit(&self) -> Exit {
        use pbwforge::Error as E;
        match self {
            CliError::Usage(_) | CliError::Parse(_) => Exit::Usage,
            CliError::Invariant(_) => Exit::Invariant,
            CliError::Core(e) => match e {
                E::Usage(_) | E::Parse(_) | E::TruncationMismatch { .. } | E::Precondition(_) => Exit::Usage,
                E::Construction(_) | E::Structural(_) => Exit::Invariant,
            },
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "pbwforge", version, about = "PBW certification and cobar computations for deformed tensor algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Add wall-clock time to the report (breaks byte-identical output).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Deform {
    None,
    Ce,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Cobar,
    Hochschild,
    Phi,
    Pbw,
    Termination,
}

#[derive(Clone, Debug, Args)]
#[group(required = true, multiple = false)]
pub struct InputArgs {
    /// Problem file (JSON).
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Name of a bundled example.
    #[arg(long)]
    pub builtin: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the Jacobi identity (lie) or the Poisson condition (poisson).
    Jacobi {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Decide confluence of the rewriting system and report Hilbert data.
    PbwCheck {
        #[command(flatten)]
        input: InputArgs,
        /// Largest word degree checked; defaults to the file, then 4.
        #[arg(long)]
        max_degree: Option<usize>,
        /// ℏ-truncation order K (coefficients mod ℏ^K); defaults to the file, then 3.
        #[arg(long)]
        hbar_order: Option<usize>,
        /// Include replayable rewrite logs for every overlap triple.
        #[arg(long)]
        witness: bool,
    },
    /// Cohomology of the cobar complex of the exterior coalgebra.
    Cobar {
        #[command(flatten)]
        input: InputArgs,
        /// Top internal weight W.
        #[arg(long)]
        weights: Option<usize>,
        #[arg(long, value_enum, default_value_t = Deform::None)]
        deform: Deform,
        /// ℏ-truncation order for `--deform ce`.
        #[arg(long)]
        hbar_order: Option<usize>,
    },
    /// Complete the first-order relations of a Poisson bivector.
    Solve {
        #[command(flatten)]
        input: InputArgs,
        /// Solve through ℏ^(K-1).
        #[arg(long)]
        hbar_order: Option<usize>,
        /// Fixed ansatz degree for every correction order.
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Run the invariant suites.
    Selftest {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = selftest::DEFAULT_SEED)]
        seed: u64,
    },
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let mut out = match &cli.command {
        Command::Jacobi { input } => commands::jacobi(input),
        Command::PbwCheck {
            input,
            max_degree,
            hbar_order,
            witness,
        } => commands::pbw_check(input, *max_degree, *hbar_order, *witness),
        Command::Cobar {
            input,
            weights,
            deform,
            hbar_order,
        } => commands::cobar(input, *weights, *deform, *hbar_order),
        Command::Solve {
            input,
            hbar_order,
            max_degree,
        } => commands::solve(input, *hbar_order, *max_degree),
        Command::Selftest { suite, seed } => Ok(selftest::run(*suite, *seed)),
    }?;
    if cli.timing {
        let ms = start.elapsed().as_millis() as u64;
        out.report.timing_ms = Some(ms);
        out.table.push_str(&format!("time: {ms} ms\n"));
    }
    Ok(out)
}

/// Formats an outcome for stdout.
pub fn render(out: &Outcome, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&out.report).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Table => out.table.clone(),
    }
}
