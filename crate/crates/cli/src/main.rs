//! `twoscale`: region maps, estimate verification, Picard solves and field norms.

mod norm;
mod output;
mod region;
mod solve;
mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

/// Exit status for a run whose checks ran but did not all pass.
const EXIT_FAILED: u8 = 1;
/// Exit status for invalid requests, including unknown suite names.
const EXIT_USAGE: u8 = 2;
/// Exit status for a diverged Picard iteration.
const EXIT_DIVERGED: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "twoscale", version, about = "Two-scale norm lab for semilinear waves on the torus")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify a (gamma, p) rectangle and write region_map.csv and region_map.svg.
    RegionMap(region::RegionArgs),
    /// Run estimate suites and write verify.json and verify.csv.
    Verify(verify::VerifyArgs),
    /// Run the Picard iteration and write solve.json (and optionally the frames).
    Solve(solve::SolveArgs),
    /// Measure a TSWF field and print the norms as JSON.
    Norm(norm::NormArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::RegionMap(args) => region::run(&args),
        Command::Verify(args) => verify::run(&args),
        Command::Solve(args) => solve::run(&args),
        Command::Norm(args) => norm::run(&args),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            let usage = err.downcast_ref::<twoscale_core::Error>().is_some_and(|e| {
                matches!(
                    e,
                    twoscale_core::Error::UnknownSuite(_)
                        | twoscale_core::Error::Precondition(_)
                        | twoscale_core::Error::InvalidGrid(_)
                        | twoscale_core::Error::InvalidExponent(_)
                        | twoscale_core::Error::ExponentWindow(_)
                )
            });
            ExitCode::from(if usage { EXIT_USAGE } else { EXIT_FAILED })
        }
    }
}
