use std::process::ExitCode;

use clap::{Parser, Subcommand};
use geodesy_cli::commands::{self, CheckOptions, ConstructRequest};
use geodesy_cli::input::load;
use geodesy_cli::verify::verify_paper;
use geodesy_cli::{CliError, Report, Status};
use geodesy_core::TheoremChoice;

/// Geodesic elements and geodesic bases of left-invariant metrics on Lie groups.
#[derive(Parser, Debug)]
#[command(name = "geodesy", version)]
struct Cli {
    /// Print the machine (JSON) form of the report.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug)]
struct AlgebraArgs {
    /// `catalog:NAME`, a JSON document, or `-` for stdin.
    algebra: String,
    /// Catalog parameters, e.g. `a=1/2 b=0`.
    params: Vec<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Structural invariants of an algebra.
    Info {
        #[command(flatten)]
        algebra: AlgebraArgs,
    },
    /// Verify that a basis is geodesic for a metric.
    Check {
        #[command(flatten)]
        algebra: AlgebraArgs,
        /// `identity`, `witness`, or a JSON file.
        #[arg(long)]
        metric: Option<String>,
        /// `standard`, `witness`, or a JSON file.
        #[arg(long)]
        basis: Option<String>,
        /// Also require the basis to be orthonormal.
        #[arg(long)]
        orthonormal: bool,
        /// Defect tolerance for float documents.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Build a metric and geodesic basis, or an obstruction.
    Construct {
        #[command(flatten)]
        algebra: AlgebraArgs,
        /// auto, nilabelian, rdiag, codim1, heisenberg or search.
        #[arg(long, default_value = "auto")]
        theorem: String,
        #[arg(long, env = "GEODESY_SEED", default_value_t = 42)]
        seed: u64,
        /// Write the algebra with the constructed metric and basis here.
        #[arg(long)]
        out: Option<String>,
    },
    /// Sample geodesic elements by Newton's method from random starts.
    Sample {
        #[command(flatten)]
        algebra: AlgebraArgs,
        /// `identity`, `witness`, or a JSON file.
        #[arg(long)]
        metric: Option<String>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, env = "GEODESY_SEED", default_value_t = 42)]
        seed: u64,
    },
    /// Re-run every catalog witness, verdict and constructor suite.
    VerifyPaper {
        /// Only run checks whose name contains this text.
        #[arg(long)]
        filter: Option<String>,
        #[arg(long, env = "GEODESY_SEED", default_value_t = 42)]
        seed: u64,
    },
}

fn run(command: Command) -> Result<Report, CliError> {
    match command {
        Command::Info { algebra } => commands::info(&load(&algebra.algebra, &algebra.params)?),
        Command::Check { algebra, metric, basis, orthonormal, tol } => {
            let input = load(&algebra.algebra, &algebra.params)?;
            commands::check(&input, &CheckOptions { metric, basis, orthonormal, tol })
        }
        Command::Construct { algebra, theorem, seed, out } => {
            let choice = TheoremChoice::parse(&theorem)
                .ok_or_else(|| CliError::Usage(format!("unknown theorem {theorem:?}")))?;
            let input = load(&algebra.algebra, &algebra.params)?;
            commands::construct(&input, &ConstructRequest { theorem: choice, theorem_name: theorem, seed, out })
        }
        Command::Sample { algebra, metric, trials, seed } => {
            commands::sample(&load(&algebra.algebra, &algebra.params)?, metric.as_deref(), trials, seed)
        }
        Command::VerifyPaper { filter, seed } => Ok(verify_paper(seed, filter.as_deref())),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            let code = if e.use_stderr() { Status::Usage.code() } else { 0 };
            return ExitCode::from(code as u8);
        }
    };
    match run(cli.command) {
        Ok(report) => {
            if cli.json {
                print!("{}", report.machine());
            } else {
                print!("{}", report.human());
            }
            ExitCode::from(report.status.code() as u8)
        }
        Err(e) => {
            eprintln!("geodesy: {e}");
            ExitCode::from(Status::Usage.code() as u8)
        }
    }
}
