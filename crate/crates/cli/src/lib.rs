//! Command-line front end for `dualmat`: reads JSON matrix files, runs a
//! decomposition, inverse or relation check, and prints a JSON report.
//!
//! Exit codes: 0 when every residual is within tolerance and the answer is
//! yes, 1 when the mathematics says no (no inverse, order does not hold,
//! residual too large), 2 for unreadable or malformed input.

pub mod commands;
pub mod error;
pub mod io;
pub mod report;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use dualmat::ginv::{InverseKind, Method};
use dualmat::relations::OrderKind;
use dualmat::Tolerances;

use commands::{Form, GenKind, Suite};
use error::CliError;
use io::read_matrix;
use report::{Config, Outcome, Report};

#[derive(Debug, Parser)]
#[command(
    name = "dualmat",
    version,
    about = "Dual SVD, H-S decomposition and dual generalized inverses"
)]
pub struct Cli {
    /// Pass/fail tolerance for residuals and identities (relative to scale).
    #[arg(long, global = true, env = "DUALMAT_TOL")]
    pub tol: Option<f64>,

    /// Write the report here instead of stdout. For `gen`, the matrix file.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InvKindArg {
    Dmpgi,
    Ndmpi,
    Dggi,
    Dcgi,
}

impl From<InvKindArg> for InverseKind {
    fn from(k: InvKindArg) -> Self {
        match k {
            InvKindArg::Dmpgi => InverseKind::Dmpgi,
            InvKindArg::Ndmpi => InverseKind::Ndmpi,
            InvKindArg::Dggi => InverseKind::Dggi,
            InvKindArg::Dcgi => InverseKind::Dcgi,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Formula,
    Decomposition,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Formula => Method::Formula,
            MethodArg::Decomposition => Method::Decomposition,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    Dcore,
    Dminus,
}

impl From<OrderArg> for OrderKind {
    fn from(o: OrderArg) -> Self {
        match o {
            OrderArg::Dcore => OrderKind::Dcore,
            OrderArg::Dminus => OrderKind::Dminus,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dual singular value decomposition.
    Svd { file: PathBuf },
    /// H-S decomposition of a square matrix.
    Hsd {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "basic")]
        form: Form,
    },
    /// Dual generalized inverse.
    Inv {
        file: PathBuf,
        #[arg(long, value_enum)]
        kind: InvKindArg,
        #[arg(long, value_enum, default_value = "formula")]
        method: MethodArg,
    },
    /// Identity, order, existence or coincidence checks on one matrix.
    Check {
        file: PathBuf,
        #[arg(long, value_enum)]
        suite: Suite,
    },
    /// Decide `A ≤ B` in the D-core or D-minus order.
    Order {
        #[arg(long, value_enum)]
        kind: OrderArg,
        a: PathBuf,
        b: PathBuf,
    },
    /// Random instance that satisfies the named property.
    Gen {
        #[arg(value_enum)]
        kind: GenKind,
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Defaults, with `tol` replacing both pass/fail tolerances. Structural
/// cutoffs (ranks, vanishing blocks) are not affected.
pub fn tolerances(tol: Option<f64>) -> Result<Tolerances, CliError> {
    let mut t = Tolerances::default();
    if let Some(x) = tol {
        if !(x.is_finite() && x > 0.0) {
            return Err(CliError::Invalid(format!(
                "tolerance must be positive and finite, got {x}"
            )));
        }
        t.residual = x;
        t.identity = x;
    }
    Ok(t)
}

fn dispatch(cli: &Cli, tol: &Tolerances) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Svd { file } => commands::svd(&read_matrix(file)?, tol),
        Command::Hsd { file, form } => commands::hsd(&read_matrix(file)?, *form, tol),
        Command::Inv { file, kind, method } => {
            commands::inv(&read_matrix(file)?, (*kind).into(), (*method).into(), tol)
        }
        Command::Check { file, suite } => commands::check(&read_matrix(file)?, *suite, tol),
        Command::Order { kind, a, b } => commands::order(&read_matrix(a)?, &read_matrix(b)?, (*kind).into(), tol),
        Command::Gen { kind, n, seed } => commands::gen(*kind, *n, *seed, cli.output.as_deref(), tol),
    }
}

/// Runs one command. `echo` is recorded verbatim as the report's command.
pub fn execute(cli: &Cli, echo: Vec<String>) -> Report {
    let start = Instant::now();
    let seed = match cli.command {
        Command::Gen { seed, .. } => Some(seed),
        _ => None,
    };
    let (tolerances, outcome) = match tolerances(cli.tol) {
        Ok(t) => (t, dispatch(cli, &t)),
        Err(e) => (Tolerances::default(), Err(e)),
    };
    let config = Config { tolerances, seed };
    Report::new(echo, config, outcome, start.elapsed().as_secs_f64() * 1e3)
}

/// Prints the report, or writes it to `--output` for commands other than
/// `gen`. Returns the process exit code.
pub fn emit(cli: &Cli, report: &Report) -> u8 {
    let text = report.to_json();
    match (&cli.output, &cli.command) {
        (Some(path), cmd) if !matches!(cmd, Command::Gen { .. }) => {
            if let Err(e) = fs::write(path, text + "\n") {
                eprintln!("error: {}: {e}", path.display());
                return 2;
            }
        }
        _ => {
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = writeln!(std::io::stdout().lock(), "{text}");
        }
    }
    report.exit_code
}
