use std::fs::File;
use std::io::BufReader;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::Args;
use serde::Serialize;
use twoscale_core::norms::{lebesgue_norm, sobolev_norm, x_norm};
use twoscale_core::spectral::tswf::read_field;
use twoscale_core::lab::Value;
use twoscale_core::DyadicTiling;

#[derive(Debug, Args)]
pub struct NormArgs {
    /// TSWF field file.
    #[arg(long)]
    pub input: PathBuf,
    /// Outer (Lebesgue) exponent; `inf` is accepted.
    #[arg(long, default_value_t = 2.0)]
    pub r: f64,
    /// Inner cube exponent of the two-scale norm; needs --k.
    #[arg(long, requires = "k")]
    pub p: Option<f64>,
    /// Cube scale: cubes of side 2^{-k}.
    #[arg(long, requires = "p", allow_negative_numbers = true)]
    pub k: Option<i32>,
    /// Sobolev order.
    #[arg(long)]
    pub gamma: Option<f64>,
}

#[derive(Debug, Serialize)]
struct NormReport {
    n: u32,
    points: usize,
    length: f64,
    r: Value,
    lebesgue: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    two_scale: Option<TwoScale>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sobolev: Option<Sobolev>,
}

#[derive(Debug, Serialize)]
struct TwoScale {
    p: Value,
    k: i32,
    value: f64,
}

#[derive(Debug, Serialize)]
struct Sobolev {
    gamma: f64,
    value: f64,
}

pub fn run(args: &NormArgs) -> Result<ExitCode> {
    let file = File::open(&args.input).with_context(|| format!("opening {}", args.input.display()))?;
    let field = read_field(BufReader::new(file)).with_context(|| format!("reading {}", args.input.display()))?;
    let grid = *field.grid();
    let two_scale = match (args.p, args.k) {
        (Some(p), Some(k)) => Some(TwoScale { p: Value(p), k, value: x_norm(&field, args.r, p, &DyadicTiling::new(grid, k)?)? }),
        _ => None,
    };
    let report = NormReport {
        n: grid.dim(),
        points: grid.points(),
        length: grid.length(),
        r: Value(args.r),
        lebesgue: lebesgue_norm(&field, args.r)?,
        two_scale,
        sobolev: args.gamma.map(|gamma| Sobolev { gamma, value: sobolev_norm(&field, gamma) }),
    };
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(ExitCode::SUCCESS)
}
