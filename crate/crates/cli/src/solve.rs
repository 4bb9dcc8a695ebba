use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use num_complex::Complex64;
use twoscale_core::lab::{gaussian_data, knapp_resolvable, make_knapp};
use twoscale_core::norms::sobolev_norm;
use twoscale_core::solver::{picard_solve, SolverConfig};
use twoscale_core::spectral::tswf::{read_field, write_field};
use twoscale_core::{CauchyData, CutoffFamily, Error, Field, GridSpec, ProblemParams, SpaceTimeField};

use crate::output::{ensure_dir, write_atomic, write_json};
use crate::EXIT_DIVERGED;

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Datum {
    /// Smooth Gaussian bump, band-limited to half the grid band.
    Gaussian,
    /// Knapp packet at the finest scale the grid resolves.
    Knapp,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Built-in position datum; ignored when --input is given.
    #[arg(long, value_enum, default_value = "gaussian")]
    pub datum: Datum,
    /// Position datum f as a TSWF file.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Velocity datum g as a TSWF file (defaults to zero).
    #[arg(long, requires = "input")]
    pub velocity: Option<PathBuf>,
    /// H^gamma norm of the built-in datum.
    #[arg(long, default_value_t = 1e-2)]
    pub amplitude: f64,
    #[arg(long, default_value_t = 4)]
    pub n: u32,
    #[arg(long = "N", default_value_t = 16)]
    pub points: usize,
    #[arg(long = "L", default_value_t = 1.0)]
    pub length: f64,
    #[arg(long, default_value_t = 0.1)]
    pub gamma: f64,
    #[arg(long, default_value_t = 1.86)]
    pub p: f64,
    /// Final time.
    #[arg(long = "T", default_value_t = 0.25)]
    pub final_time: f64,
    /// Time steps on [0, T].
    #[arg(long = "M", default_value_t = 32)]
    pub steps: usize,
    /// Sign of the nonlinearity mu |u|^{p-1} u; -1 is defocusing.
    #[arg(long, default_value_t = -1.0, allow_negative_numbers = true)]
    pub mu: f64,
    #[arg(long = "max-iter", default_value_t = 50)]
    pub max_iter: usize,
    /// Post-compose the nonlinearity with the projection onto this dyadic scale.
    #[arg(long)]
    pub localize: Option<u32>,
    /// Iterate even when (gamma, p) is not in a well-posed region.
    #[arg(long)]
    pub allow_unclassified: bool,
    /// Also write the solution frames as TSWF files under OUT/frames.
    #[arg(long)]
    pub frames: bool,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

fn read_tswf(path: &Path) -> Result<Field> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    read_field(BufReader::new(file)).with_context(|| format!("reading {}", path.display()))
}

fn load_data(args: &SolveArgs) -> Result<CauchyData> {
    if let Some(path) = &args.input {
        let f = read_tswf(path)?;
        let g = match &args.velocity {
            Some(v) => read_tswf(v)?,
            None => Field::zeros(*f.grid(), f.representation()),
        };
        return Ok(CauchyData::new(f, g)?);
    }
    let grid = GridSpec::new(args.n, args.points, args.length)?;
    match args.datum {
        Datum::Gaussian => Ok(gaussian_data(grid, args.gamma, args.amplitude)?),
        Datum::Knapp => {
            let cutoffs = CutoffFamily::default();
            let Some(j) = (1..=cutoffs.j_max(&grid)).rev().find(|&j| knapp_resolvable(j, &grid)) else {
                bail!(Error::Precondition(format!("no Knapp scale is resolved by N = {} on side {}", args.points, args.length)));
            };
            let f = make_knapp(j, grid)?;
            let f = f.scale(Complex64::new(args.amplitude / sobolev_norm(&f, args.gamma), 0.0));
            Ok(CauchyData::position(f))
        }
    }
}

fn write_frames(dir: &Path, u: &SpaceTimeField) -> Result<()> {
    ensure_dir(dir)?;
    for (i, frame) in u.frames().iter().enumerate() {
        write_atomic(&dir.join(format!("frame_{i:04}.tswf")), |w| Ok(write_field(w, frame)?))?;
    }
    Ok(())
}

pub fn run(args: &SolveArgs) -> Result<ExitCode> {
    let data = load_data(args)?;
    let n = data.f().grid().dim();
    let params = ProblemParams::new(n, args.gamma, args.p)?;
    let mut config = SolverConfig::new(args.final_time, args.steps, args.p);
    config.mu = args.mu;
    config.max_iterations = args.max_iter;
    config.allow_unclassified = args.allow_unclassified;
    config.localize = args.localize;

    ensure_dir(&args.out)?;
    let report_path = args.out.join("solve.json");
    match picard_solve(&data, &config, &params, &CutoffFamily::default()) {
        Ok((u, report)) => {
            write_json(&report_path, &report)?;
            if args.frames {
                write_frames(&args.out.join("frames"), &u)?;
            }
            println!("converged {} after {} iterations", report.converged, report.iterations.len());
            Ok(if report.converged { ExitCode::SUCCESS } else { ExitCode::from(crate::EXIT_FAILED) })
        }
        Err(Error::Diverged(report)) => {
            write_json(&report_path, &report)?;
            eprintln!("diverged after {} iterations", report.iterations.len());
            Ok(ExitCode::from(EXIT_DIVERGED))
        }
        Err(e) => Err(e.into()),
    }
}
