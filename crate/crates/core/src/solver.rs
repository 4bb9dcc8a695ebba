//! Picard iteration `u <- u_0 + Box^{-1} F(u)` in the iteration-norm ball, with contraction diagnostics.

use num_complex::Complex64;
use serde::Serialize;

use crate::atlas::{classify_region, ProblemParams, RegionLabel};
use crate::error::{Error, Result};
use crate::lp::{project_lp, CutoffFamily};
use crate::norms::{sobolev_norm, star_norm, SpaceTimeField};
use crate::propagator::{duhamel_frames, free_solution_frames, CauchyData};
use crate::spectral::{Field, Representation};

/// Moduli below this are treated as exact zeros by the power map.
const ZERO_FLOOR: f64 = 1e-300;
/// Iteration stops once successive differences fall below this fraction of the ball radius.
const STOP_FRACTION: f64 = 1e-9;
/// Ball radius as a multiple of the free solution's iteration norm.
const BALL_FACTOR: f64 = 4.0;
/// Largest fraction of the data's L2 mass allowed outside the central half of the frequency band.
const BAND_LEAKAGE: f64 = 1e-6;

/// A pointwise nonlinearity `F(u)` with `F(0) = 0`.
pub trait Nonlinearity: Send + Sync {
    fn eval(&self, u: Complex64) -> Complex64;
}

/// `F(u) = mu |u|^{p-1} u`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerNonlinearity {
    pub p: f64,
    pub mu: f64,
}

impl Nonlinearity for PowerNonlinearity {
    fn eval(&self, u: Complex64) -> Complex64 {
        let m = u.norm();
        if m < ZERO_FLOOR {
            Complex64::default()
        } else {
            u * (self.mu * m.powf(self.p - 1.0))
        }
    }
}

/// Applies `mu |u|^{p-1} u` pointwise in physical space.
pub fn nonlinearity(u: &Field, p: f64, mu: f64) -> Result<Field> {
    if !(p > 1.0) {
        return Err(Error::Precondition(format!("nonlinearity power must exceed 1, got {p}")));
    }
    Ok(apply_nonlinearity(u, &PowerNonlinearity { p, mu }))
}

fn apply_nonlinearity(u: &Field, f: &dyn Nonlinearity) -> Field {
    u.to(Representation::Physical).map(|v| f.eval(v))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolverConfig {
    /// Final time `T` in `(0, 1]`.
    pub final_time: f64,
    /// Number of time steps `M`; frames are stored at `M + 1` uniform times.
    pub steps: usize,
    pub max_iterations: usize,
    /// Expected contraction ratio of successive differences, used for reporting.
    pub contraction_target: f64,
    pub p: f64,
    pub mu: f64,
    /// Run even when the parameters are not classified as well-posed.
    pub allow_unclassified: bool,
    /// Post-compose the nonlinearity with `S_j` (the frequency-localized model problem).
    pub localize: Option<u32>,
}

impl SolverConfig {
    pub fn new(final_time: f64, steps: usize, p: f64) -> Self {
        Self {
            final_time,
            steps,
            max_iterations: 50,
            contraction_target: 0.5,
            p,
            mu: -1.0,
            allow_unclassified: false,
            localize: None,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.final_time > 0.0 && self.final_time <= 1.0) {
            return Err(Error::Precondition(format!("final time must lie in (0, 1], got {}", self.final_time)));
        }
        if self.steps < 8 {
            return Err(Error::Precondition(format!("need at least 8 time steps, got {}", self.steps)));
        }
        if self.max_iterations < 2 {
            return Err(Error::Precondition("need at least two iterations".into()));
        }
        if !(self.contraction_target > 0.0 && self.contraction_target < 1.0) {
            return Err(Error::Precondition("contraction target must lie in (0, 1)".into()));
        }
        if !(self.p > 1.0) {
            return Err(Error::Precondition(format!("nonlinearity power must exceed 1, got {}", self.p)));
        }
        Ok(())
    }

    fn power(&self) -> PowerNonlinearity {
        PowerNonlinearity { p: self.p, mu: self.mu }
    }
}

/// One Picard step.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IterationStep {
    pub iteration: usize,
    /// `||u^{(m)} - u^{(m-1)}||_*`.
    pub difference: f64,
    /// `||u^{(m)}||_{C(H^gamma)}`.
    pub energy: f64,
    /// `||u^{(m)}||_*`.
    pub star: f64,
    /// `difference / previous difference`, absent for the first step.
    pub ratio: Option<f64>,
    pub inside_ball: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IterationReport {
    pub params: ProblemParams,
    pub config: SolverConfig,
    pub region: RegionLabel,
    /// `||u_0||_*`.
    pub free_norm: f64,
    pub ball_radius: f64,
    pub iterations: Vec<IterationStep>,
    pub converged: bool,
    pub left_ball: bool,
    /// Largest ratio of successive differences from the second iteration on.
    pub contraction_ratio: Option<f64>,
    /// `||u - u_0 - Box^{-1} F(u)||_{C(H^gamma)}` for the returned iterate.
    pub fixed_point_residual: Option<f64>,
}

fn energy_norm(u: &SpaceTimeField, gamma: f64) -> f64 {
    u.frames().iter().map(|f| sobolev_norm(f, gamma)).fold(0.0, f64::max)
}

fn difference(u: &SpaceTimeField, v: &SpaceTimeField) -> Result<SpaceTimeField> {
    let frames = u.frames().iter().zip(v.frames()).map(|(a, b)| a.sub(b)).collect::<Result<Vec<_>>>()?;
    SpaceTimeField::new(u.times().to_vec(), frames)
}

fn sum(u: &SpaceTimeField, v: &SpaceTimeField) -> Result<SpaceTimeField> {
    let frames = u
        .frames()
        .iter()
        .zip(v.frames())
        .map(|(a, b)| Ok(a.add(b)?.into_physical()))
        .collect::<Result<Vec<_>>>()?;
    SpaceTimeField::new(u.times().to_vec(), frames)
}

/// Checks that the data lives in the central half of the frequency band.
fn check_band_limited(field: &Field) -> Result<()> {
    let spec = field.to(Representation::Frequency);
    let grid = *spec.grid();
    let quarter = grid.points() / 4;
    let total: f64 = spec.samples().iter().map(|v| v.norm_sqr()).sum();
    if total == 0.0 {
        return Ok(());
    }
    let mut outside = 0.0;
    for (flat, v) in spec.samples().iter().enumerate() {
        let idx = grid.unflatten(flat);
        if idx.iter().any(|&i| grid.mode_index(i).unsigned_abs() as usize >= quarter) {
            outside += v.norm_sqr();
        }
    }
    if outside > BAND_LEAKAGE * total {
        return Err(Error::Precondition(format!(
            "data is not band-limited: {:.3e} of its L2 mass sits above half the Nyquist frequency",
            outside / total
        )));
    }
    Ok(())
}

/// `Box^{-1} F(u)` frame by frame, optionally localized to `S_j`.
fn forced_response(
    u: &SpaceTimeField,
    f: &dyn Nonlinearity,
    localize: Option<u32>,
    cutoffs: &CutoffFamily,
) -> Result<SpaceTimeField> {
    let forcing = u.map_frames(|frame| {
        let v = apply_nonlinearity(frame, f);
        match localize {
            Some(j) => project_lp(&v, j, cutoffs),
            None => Ok(v),
        }
    })?;
    duhamel_frames(&forcing)
}

/// Runs the Picard iteration from the free solution.
///
/// Stops when the iteration-norm difference drops below `1e-9` times the ball radius
/// (`4 ||u_0||_*`). Two consecutive increases of the difference count as divergence.
pub fn picard_solve(
    data: &CauchyData,
    config: &SolverConfig,
    params: &ProblemParams,
    cutoffs: &CutoffFamily,
) -> Result<(SpaceTimeField, IterationReport)> {
    config.validate()?;
    let region = classify_region(params);
    if !region.is_well_posed() && !config.allow_unclassified {
        return Err(Error::Precondition(format!(
            "parameters classify as {region}; set the override flag to iterate anyway"
        )));
    }
    if (params.p - config.p).abs() > 1e-12 {
        return Err(Error::Precondition("solver power differs from the problem power".into()));
    }
    check_band_limited(data.f())?;
    check_band_limited(data.g())?;

    let power = config.power();
    let u0 = free_solution_frames(data, config.final_time, config.steps)?;
    let free_norm = star_norm(&u0, params, cutoffs)?.total;
    let ball_radius = BALL_FACTOR * free_norm;
    let mut report = IterationReport {
        params: *params,
        config: config.clone(),
        region,
        free_norm,
        ball_radius,
        iterations: Vec::new(),
        converged: false,
        left_ball: false,
        contraction_ratio: None,
        fixed_point_residual: None,
    };

    let mut current = u0.clone();
    let mut growth_streak = 0;
    for iteration in 1..=config.max_iterations {
        let next = sum(&u0, &forced_response(&current, &power, config.localize, cutoffs)?)?;
        let diff = star_norm(&difference(&next, &current)?, params, cutoffs)?.total;
        let star = star_norm(&next, params, cutoffs)?.total;
        let previous = report.iterations.last().map(|s| s.difference);
        let ratio = previous.map(|d| if d > 0.0 { diff / d } else { 0.0 });
        let inside_ball = star <= ball_radius;
        report.left_ball |= !inside_ball;
        report.iterations.push(IterationStep {
            iteration,
            difference: diff,
            energy: energy_norm(&next, params.gamma),
            star,
            ratio,
            inside_ball,
        });
        current = next;

        if diff <= STOP_FRACTION * ball_radius {
            report.converged = true;
            break;
        }
        growth_streak = match previous {
            Some(d) if diff > d => growth_streak + 1,
            _ => 0,
        };
        if growth_streak >= 2 || !diff.is_finite() {
            return Err(Error::Diverged(Box::new(report)));
        }
    }

    report.contraction_ratio = report.iterations.iter().skip(1).filter_map(|s| s.ratio).reduce(f64::max);
    if report.converged {
        let image = sum(&u0, &forced_response(&current, &power, config.localize, cutoffs)?)?;
        report.fixed_point_residual = Some(energy_norm(&difference(&current, &image)?, params.gamma));
    }
    Ok((current, report))
}

/// `||Box^{-1}(F(u) - F(v))||_* / ||u - v||_*` with the configured nonlinearity.
pub fn contraction_probe(
    u: &SpaceTimeField,
    v: &SpaceTimeField,
    config: &SolverConfig,
    params: &ProblemParams,
    cutoffs: &CutoffFamily,
) -> Result<f64> {
    let power = config.power();
    let gap = difference(u, v)?;
    let denominator = star_norm(&gap, params, cutoffs)?.total;
    if denominator == 0.0 {
        return Err(Error::ZeroDenominator("u and v coincide".into()));
    }
    let forcing = u.frames().iter().zip(v.frames()).map(|(a, b)| {
        apply_nonlinearity(a, &power).sub(&apply_nonlinearity(b, &power))
    });
    let forcing = SpaceTimeField::new(u.times().to_vec(), forcing.collect::<Result<Vec<_>>>()?)?;
    let numerator = star_norm(&duhamel_frames(&forcing)?, params, cutoffs)?.total;
    Ok(numerator / denominator)
}
