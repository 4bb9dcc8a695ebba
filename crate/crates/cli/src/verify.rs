use std::path::PathBuf;
use std::process::ExitCode;
use std::thread;

use anyhow::Result;
use clap::Args;
use twoscale_core::lab::{reports_csv, resolve_suites, run_suite, CheckReport, SuiteConfig};

use crate::output::{ensure_dir, write_json, write_text};
use crate::EXIT_FAILED;

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Suites to run (repeatable or comma separated); `all` runs every suite.
    #[arg(long, value_delimiter = ',', default_value = "all")]
    pub suite: Vec<String>,
    #[arg(long, default_value_t = 4)]
    pub n: u32,
    /// Grid points per axis.
    #[arg(long = "N", default_value_t = 16)]
    pub points: usize,
    /// Torus side length.
    #[arg(long = "L", default_value_t = 1.0)]
    pub length: f64,
    #[arg(long, default_value_t = 0.1)]
    pub gamma: f64,
    #[arg(long, default_value_t = 1.86)]
    pub p: f64,
    /// Time steps on [0, 1].
    #[arg(long = "M", default_value_t = 32)]
    pub steps: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Seeded fields per ratio corpus.
    #[arg(long, default_value_t = 20)]
    pub corpus: usize,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

pub fn run(args: &VerifyArgs) -> Result<ExitCode> {
    let suites = resolve_suites(&args.suite)?;
    let config = SuiteConfig {
        n: args.n,
        points: args.points,
        length: args.length,
        seed: args.seed,
        gamma: args.gamma,
        p: args.p,
        corpus: args.corpus,
        steps: args.steps,
    };
    // suites are independent; results are gathered in suite order
    let results: Vec<_> = thread::scope(|scope| {
        let handles: Vec<_> = suites.iter().map(|name| scope.spawn(move || run_suite(name, &config))).collect();
        handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
    });
    let mut reports: Vec<CheckReport> = Vec::new();
    for r in results {
        reports.extend(r?);
    }

    ensure_dir(&args.out)?;
    write_json(&args.out.join("verify.json"), &reports)?;
    write_text(&args.out.join("verify.csv"), &reports_csv(&reports))?;
    for r in &reports {
        println!("{} {}", if r.passed { "PASS" } else { "FAIL" }, r.name);
    }
    Ok(if reports.iter().all(|r| r.passed) { ExitCode::SUCCESS } else { ExitCode::from(EXIT_FAILED) })
}
