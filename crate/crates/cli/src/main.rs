use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod config;
mod output;

#[derive(Debug, Parser)]
#[command(name = "serieseig", version, about = "Exact power-series eigenvalues: Hill and Hankel quantization")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Dump the series coefficients c_j(E) as JSON.
    Series(commands::SeriesArgs),
    /// Roots of c_M(E) for a range of M.
    Hill(commands::HillArgs),
    /// Roots of the Hankel determinant for a range of D.
    Hankel(commands::HankelArgs),
    /// Error against a reference value across a grid of widths a.
    ScanA(commands::ScanArgs),
    /// Shooting eigenvalue with a discretization estimate.
    Oracle(commands::OracleArgs),
    /// Run a JSON configuration.
    Solve {
        #[arg(long)]
        config: PathBuf,
    },
    /// Recompute the reference tables and figures and compare.
    Reproduce(commands::ReproduceArgs),
}

/// Exit status classes: 2 bad input, 3 computation failure, 4 mismatch
/// against the printed reference values.
#[derive(Debug)]
pub enum Failure {
    Config(anyhow::Error),
    Compute(anyhow::Error),
    Mismatch(usize),
}

impl Failure {
    pub fn config(msg: impl std::fmt::Display) -> Self {
        Failure::Config(anyhow::anyhow!("{msg}"))
    }

    fn code(&self) -> u8 {
        match self {
            Failure::Config(_) => 2,
            Failure::Compute(_) => 3,
            Failure::Mismatch(_) => 4,
        }
    }
}

impl From<serieseig::Error> for Failure {
    fn from(e: serieseig::Error) -> Self {
        use serieseig::Error::*;
        match e {
            Parse(_) | InvalidBracket(_) | InvalidInterval(_) | InvalidParameter(_) | FreeParticle | NonPositiveCoupling => {
                Failure::Config(e.into())
            }
            _ => Failure::Compute(e.into()),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Compute(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Series(a) => commands::series(a),
        Command::Hill(a) => commands::hill(a),
        Command::Hankel(a) => commands::hankel(a),
        Command::ScanA(a) => commands::scan_a(a),
        Command::Oracle(a) => commands::oracle(a),
        Command::Solve { config } => commands::solve(config),
        Command::Reproduce(a) => commands::run_reproduce(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Config(e) => eprintln!("error: {e:#}"),
                Failure::Compute(e) => eprintln!("computation failed: {e:#}"),
                Failure::Mismatch(n) => eprintln!("{n} value(s) differ from the reference"),
            }
            ExitCode::from(f.code())
        }
    }
}
