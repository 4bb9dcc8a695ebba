//! One-sided and two-sided Strichartz bounds in two-scale norms.

use super::regression::dyadic_fit;
use super::report::CheckReport;
use crate::atlas::{alpha, is_sharp_admissible, CriticalExponents};
use crate::error::{Error, Result};
use crate::lp::{localized_evolution, project_lp, CutoffFamily, Sign};
use crate::norms::{lebesgue_norm, temporal_norm, uniform_times, x_norm, DyadicTiling, SpaceTimeField};
use crate::propagator::{duhamel_frames, free_solution_frames, CauchyData};
use crate::spectral::Field;

/// Largest tolerated relative drift of a ratio under `N -> 2N`.
pub const REFINEMENT_TOLERANCE: f64 = 0.2;

#[derive(Debug, Clone, PartialEq)]
pub struct StrichartzSetup {
    pub q: f64,
    pub r: f64,
    /// `(j, k)` pairs; every pair must have `j >= k`.
    pub scales: Vec<(u32, i32)>,
    /// Time interval `[0, end]` sampled with `steps` trapezoid panels.
    pub end: f64,
    pub steps: usize,
}

fn check_pair(q: f64, r: f64, n: u32) -> Result<()> {
    if !is_sharp_admissible(q, r, n) {
        return Err(Error::InvalidExponent(format!("(q, r) = ({q}, {r}) is not sharp wave-admissible for n = {n}")));
    }
    Ok(())
}

fn check_times(end: f64, steps: usize) -> Result<()> {
    if !(end > 0.0) || steps < 2 {
        return Err(Error::InvalidTimeGrid(format!("need a positive end time and two or more steps, got {end}, {steps}")));
    }
    Ok(())
}

/// `||U_j(t) f||_{L^q_t X^{r,2}_k}` on `[0, end]`.
fn evolution_norm(f: &Field, j: u32, tiling: &DyadicTiling, setup: &StrichartzSetup, cutoffs: &CutoffFamily) -> Result<f64> {
    let values = uniform_times(0.0, setup.end, setup.steps)
        .into_iter()
        .map(|t| x_norm(&localized_evolution(f, j, t, Sign::Plus, cutoffs)?, setup.r, 2.0, tiling))
        .collect::<Result<Vec<_>>>()?;
    temporal_norm(&values, setup.end / setup.steps as f64, setup.q)
}

/// Per-field ratios `||U_j(t) f||_{L^q_t X^{r,2}_k} / (2^{-(2k-j)/q} ||f||_2)` at one `(j, k)`.
pub fn strichartz_ratios(setup: &StrichartzSetup, j: u32, k: i32, corpus: &[Field], cutoffs: &CutoffFamily) -> Result<Vec<f64>> {
    let grid = *corpus.first().ok_or_else(|| Error::Precondition("corpus is empty".into()))?.grid();
    let tiling = DyadicTiling::new(grid, k)?;
    let prefactor = 2f64.powf(-(2 * k - j as i32) as f64 / setup.q);
    corpus.iter().map(|f| Ok(evolution_norm(f, j, &tiling, setup, cutoffs)? / (prefactor * f.l2_norm()))).collect()
}

/// One-sided bound `||U_j(t) f||_{L^q_t X^{r,2}_k} <~ 2^{-(2k-j)/q} ||f||_2` over a corpus.
///
/// When the scales cover two or more values of `2k - j`, the exponent `-1/q` is fitted
/// (informationally) on the largest unnormalized ratio per scale.
pub fn check_one_sided_strichartz(setup: &StrichartzSetup, corpus: &[Field], cutoffs: &CutoffFamily) -> Result<CheckReport> {
    let grid = *corpus.first().ok_or_else(|| Error::Precondition("corpus is empty".into()))?.grid();
    let n = grid.dim();
    check_pair(setup.q, setup.r, n)?;
    if setup.q <= 2.0 {
        return Err(Error::InvalidExponent("the endpoint q = 2 is excluded".into()));
    }
    check_times(setup.end, setup.steps)?;
    if let Some((j, k)) = setup.scales.iter().find(|(j, k)| (*j as i64) < *k as i64) {
        return Err(Error::Precondition(format!("one-sided bound needs j >= k, got j = {j}, k = {k}")));
    }
    let mut report = CheckReport::new("one-sided-strichartz");
    if setup.q.is_infinite() {
        report = report.with_cap(super::embedding::ENERGY_CAP);
    }
    report
        .param("n", n as f64)
        .param("N", grid.points() as f64)
        .param("q", setup.q)
        .param("r", setup.r)
        .param("T", setup.end)
        .param("M", setup.steps as f64)
        .param("corpus", corpus.len() as f64);

    let mut gaps = Vec::new();
    let mut peaks = Vec::new();
    for &(j, k) in &setup.scales {
        let gap = (2 * k - j as i32) as f64;
        let ratios = strichartz_ratios(setup, j, k, corpus, cutoffs)?;
        for r in &ratios {
            report.ratio(&format!("j{j}-k{k}"), gap, *r);
        }
        let peak = ratios.iter().copied().fold(0.0, f64::max) * 2f64.powf(-gap / setup.q);
        report.measurement("scan", gap, peak);
        if !gaps.contains(&gap) {
            gaps.push(gap);
            peaks.push(peak);
        }
    }
    if gaps.len() >= 2 {
        report.slopes.push(dyadic_fit("2k-j", &gaps, &peaks, -1.0 / setup.q, None)?);
    }
    Ok(report.finish())
}

/// Largest relative change of the per-field ratios between a grid and its refinement.
///
/// Both corpora must hold the same continuous fields (see the seeded corpus).
pub fn check_strichartz_refinement(
    setup: &StrichartzSetup,
    coarse: &[Field],
    fine: &[Field],
    cutoffs: &CutoffFamily,
) -> Result<CheckReport> {
    if coarse.len() != fine.len() || coarse.is_empty() {
        return Err(Error::Precondition("refinement needs two nonempty corpora of equal length".into()));
    }
    let (cg, fg) = (*coarse[0].grid(), *fine[0].grid());
    if fg.points() != 2 * cg.points() || fg.length() != cg.length() || fg.dim() != cg.dim() {
        return Err(Error::Precondition("fine grid must double the points of the coarse grid".into()));
    }
    let mut report = CheckReport::new("strichartz-refinement");
    report
        .param("n", cg.dim() as f64)
        .param("N_coarse", cg.points() as f64)
        .param("N_fine", fg.points() as f64)
        .param("q", setup.q)
        .param("r", setup.r);
    let mut drift = 0.0f64;
    for &(j, k) in &setup.scales {
        let a = strichartz_ratios(setup, j, k, coarse, cutoffs)?;
        let b = strichartz_ratios(setup, j, k, fine, cutoffs)?;
        for (i, (x, y)) in a.iter().zip(&b).enumerate() {
            report.ratio("coarse", i as f64, *x);
            report.ratio("fine", i as f64, *y);
            drift = drift.max((y / x - 1.0).abs());
        }
    }
    report.compare("relative drift", drift, REFINEMENT_TOLERANCE);
    Ok(report.finish())
}

/// Regime of the scale-coupling weight at `(j, k)`.
pub fn alpha_regime(j: u32, k: i32) -> &'static str {
    let (j, k) = (j as i64, k as i64);
    if j <= k {
        "j<=k"
    } else if j < 2 * k {
        "k<=j<=2k"
    } else {
        "j>=2k"
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TwoSidedSetup {
    pub q: f64,
    pub r: f64,
    pub js: Vec<u32>,
    pub k: i32,
}

/// Two-sided bound
/// `2^{alpha/q} ||S_j u||_{L^q_t X^{r,2}_k} + ||S_j u||_{C(L^2)} <~ ||S_j f||_2 + 2^{-j} ||S_j g||_2
///  + 2^{-gamma0 j} ||S_j F||_{L^2_t L^{r0'}_x}` for `u = u_0 + Box^{-1} F`.
///
/// Each case pairs Cauchy data with a forcing whose time grid fixes the interval.
pub fn check_two_sided(
    setup: &TwoSidedSetup,
    cases: &[(CauchyData, SpaceTimeField)],
    cutoffs: &CutoffFamily,
) -> Result<CheckReport> {
    let (first, forcing) = cases.first().ok_or_else(|| Error::Precondition("no cases".into()))?;
    let grid = *first.f().grid();
    let n = grid.dim();
    check_pair(setup.q, setup.r, n)?;
    if n <= 3 {
        return Err(Error::Precondition(format!("two-sided bound needs n > 3, got {n}")));
    }
    if setup.k < 0 {
        return Err(Error::Precondition(format!("cube scale must be nonnegative, got {}", setup.k)));
    }
    let critical = CriticalExponents::new(n);
    let tiling = DyadicTiling::new(grid, setup.k)?;
    let mut report = CheckReport::new("two-sided-strichartz");
    report
        .param("n", n as f64)
        .param("N", grid.points() as f64)
        .param("q", setup.q)
        .param("r", setup.r)
        .param("k", setup.k as f64)
        .param("T", forcing.end() - forcing.start())
        .param("M", (forcing.times().len() - 1) as f64);

    for (case, (data, forcing)) in cases.iter().enumerate() {
        let steps = forcing.times().len() - 1;
        let free = free_solution_frames(data, forcing.end() - forcing.start(), steps)?;
        let retarded = duhamel_frames(forcing)?;
        let dt = forcing.step();
        for &j in &setup.js {
            let weight = 2f64.powf(alpha(j as i64, setup.k as i64, n)? / setup.q);
            let (mut strichartz, mut energy) = (Vec::new(), 0.0f64);
            for (a, b) in free.frames().iter().zip(retarded.frames()) {
                let piece = project_lp(&a.add(b)?, j, cutoffs)?.into_physical();
                strichartz.push(x_norm(&piece, setup.r, 2.0, &tiling)?);
                energy = energy.max(piece.l2_norm());
            }
            let lhs = weight * temporal_norm(&strichartz, dt, setup.q)? + energy;
            let forcing_norms = forcing
                .frames()
                .iter()
                .map(|f| lebesgue_norm(&project_lp(f, j, cutoffs)?, critical.r0_dual))
                .collect::<Result<Vec<_>>>()?;
            let rhs = project_lp(data.f(), j, cutoffs)?.l2_norm()
                + 2f64.powi(-(j as i32)) * project_lp(data.g(), j, cutoffs)?.l2_norm()
                + 2f64.powf(-critical.gamma0 * j as f64) * temporal_norm(&forcing_norms, dt, 2.0)?;
            if rhs == 0.0 {
                return Err(Error::ZeroDenominator(format!("case {case} has no content at scale {j}")));
            }
            report.ratio(alpha_regime(j, setup.k), j as f64, lhs / rhs);
        }
    }
    for &j in &setup.js {
        report.note(format!("j = {j}: {} regime", alpha_regime(j, setup.k)));
    }
    Ok(report.finish())
}
