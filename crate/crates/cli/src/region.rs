use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::Args;
use twoscale_core::atlas::{region_csv, region_svg, RegionGrid};

use crate::output::{ensure_dir, write_text};

#[derive(Debug, Args)]
pub struct RegionArgs {
    /// Spatial dimension; maps need n > 3.
    #[arg(long, default_value_t = 4)]
    pub n: u32,
    /// Samples per axis.
    #[arg(long, default_value_t = 200)]
    pub resolution: usize,
    /// Upper end of the gamma axis (defaults to a little past point a).
    #[arg(long)]
    pub gamma_max: Option<f64>,
    /// Upper end of the p axis.
    #[arg(long)]
    pub p_max: Option<f64>,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

pub fn run(args: &RegionArgs) -> Result<ExitCode> {
    if args.resolution == 0 {
        anyhow::bail!(twoscale_core::Error::Precondition("resolution must be positive".into()));
    }
    let mut grid = RegionGrid::for_dimension(args.n, args.resolution);
    if let Some(g) = args.gamma_max {
        grid.gamma_max = g;
    }
    if let Some(p) = args.p_max {
        grid.p_max = p;
    }
    let csv = region_csv(&grid)?;
    let svg = region_svg(&grid)?;
    ensure_dir(&args.out)?;
    write_text(&args.out.join("region_map.csv"), &csv)?;
    write_text(&args.out.join("region_map.svg"), &svg)?;
    Ok(ExitCode::SUCCESS)
}
