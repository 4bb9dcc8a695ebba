//! The difference estimate for the power nonlinearity in two-scale norms.

use super::report::CheckReport;
use crate::atlas::{derived_exponents, ProblemParams};
use crate::error::{Error, Result};
use crate::lp::{project_lp, CutoffFamily};
use crate::norms::{lebesgue_norm, temporal_norm, x_norm, DyadicTiling, SpaceTimeField};
use crate::solver::nonlinearity;

/// Slack for rounding when testing that ratios do not grow as `T` shrinks.
const MONOTONE_SLACK: f64 = 1e-9;

/// Both sides of
/// `||S_k(F(u) - F(v))||_{L^2_t L^{r0'}_x} <~ 2^{2nkp/((n-1)q)} ||u - v|| (||u||^{p-1} + ||v||^{p-1})`
/// with the right-hand norms in `L^q_t X^{r,2}_k`; the time factor `T^eps` is left out of the
/// right side so its effect shows up in the ratio.
pub fn uv_sides(
    params: &ProblemParams,
    k: u32,
    u: &SpaceTimeField,
    v: &SpaceTimeField,
    cutoffs: &CutoffFamily,
) -> Result<(f64, f64)> {
    let (r, q) = derived_exponents(params.n, params.p)?;
    if u.times() != v.times() {
        return Err(Error::InvalidTimeGrid("u and v use different time grids".into()));
    }
    u.frames()[0].same_grid(&v.frames()[0])?;
    let grid = *u.grid();
    let tiling = DyadicTiling::new(grid, k as i32)?;
    let dt = u.step();
    let n = params.n as f64;
    let p = params.p;

    let mut lhs_t = Vec::with_capacity(u.times().len());
    let (mut gap_t, mut u_t, mut v_t) = (Vec::new(), Vec::new(), Vec::new());
    for (a, b) in u.frames().iter().zip(v.frames()) {
        let diff = nonlinearity(a, p, 1.0)?.sub(&nonlinearity(b, p, 1.0)?)?;
        lhs_t.push(lebesgue_norm(&project_lp(&diff, k, cutoffs)?, params.critical.r0_dual)?);
        gap_t.push(x_norm(&a.sub(b)?, r, 2.0, &tiling)?);
        u_t.push(x_norm(a, r, 2.0, &tiling)?);
        v_t.push(x_norm(b, r, 2.0, &tiling)?);
    }
    let lhs = temporal_norm(&lhs_t, dt, 2.0)?;
    let prefactor = 2f64.powf(2.0 * n * k as f64 * p / ((n - 1.0) * q));
    let rhs = prefactor
        * temporal_norm(&gap_t, dt, q)?
        * (temporal_norm(&u_t, dt, q)?.powf(p - 1.0) + temporal_norm(&v_t, dt, q)?.powf(p - 1.0));
    Ok((lhs, rhs))
}

/// Ratios of [`uv_sides`] over pairs of space-time fields, each truncated to the final times
/// `T` (largest first); ratios must not grow as `T` decreases.
pub fn check_nonlinear_uv(
    params: &ProblemParams,
    k: u32,
    pairs: &[(SpaceTimeField, SpaceTimeField)],
    final_times: &[f64],
    cutoffs: &CutoffFamily,
) -> Result<CheckReport> {
    let (r, q) = derived_exponents(params.n, params.p)?;
    if pairs.is_empty() || final_times.is_empty() {
        return Err(Error::Precondition("need at least one pair and one final time".into()));
    }
    if final_times.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::Precondition("final times must decrease".into()));
    }
    let mut report = CheckReport::new("nonlinear-uv");
    report
        .param("n", params.n as f64)
        .param("gamma", params.gamma)
        .param("p", params.p)
        .param("r", r)
        .param("q", q)
        .param("k", k as f64)
        .param("epsilon", 0.5 - params.p / q)
        .param("pairs", pairs.len() as f64);

    let mut worst_growth = 0.0f64;
    for (i, (u, v)) in pairs.iter().enumerate() {
        let mut previous: Option<f64> = None;
        for &t in final_times {
            let (ut, vt) = (u.truncate(t)?, v.truncate(t)?);
            let (lhs, rhs) = uv_sides(params, k, &ut, &vt, cutoffs)?;
            if rhs == 0.0 {
                return Err(Error::ZeroDenominator(format!("pair {i} has a vanishing right-hand side")));
            }
            let ratio = lhs / rhs;
            report.ratio(&format!("pair-{i}"), t, ratio);
            if let Some(prev) = previous {
                worst_growth = worst_growth.max(ratio / prev);
            }
            previous = Some(ratio);
        }
    }
    if final_times.len() >= 2 {
        report.compare("ratio growth as T halves", worst_growth, 1.0 + MONOTONE_SLACK);
    }
    Ok(report.finish())
}
