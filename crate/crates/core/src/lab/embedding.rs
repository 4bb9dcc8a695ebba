//! Fixed-time checks: energy bound, reverse Hölder and Young on two-scale spaces.

use super::regression::dyadic_fit;
use super::report::CheckReport;
use crate::error::{Error, Result};
use crate::lp::{localized_evolution, project_low, project_lp, CutoffFamily, Sign};
use crate::norms::{lebesgue_norm, x_norm, DyadicTiling};
use crate::spectral::Field;

/// The energy bound is an identity up to rounding.
pub const ENERGY_CAP: f64 = 1.0 + 1e-10;

fn conjugate(a: f64) -> f64 {
    if a == 1.0 {
        f64::INFINITY
    } else if a.is_infinite() {
        1.0
    } else {
        a / (a - 1.0)
    }
}

fn nonempty(corpus: &[Field]) -> Result<()> {
    match corpus.first() {
        None => Err(Error::Precondition("corpus is empty".into())),
        Some(f) => corpus.iter().try_for_each(|g| f.same_grid(g)),
    }
}

/// `||U_j(t) f||_{X^{2,2}_k} / ||f||_2` over the corpus and the given times.
pub fn check_energy(j: u32, k: i32, corpus: &[Field], times: &[f64], cutoffs: &CutoffFamily) -> Result<CheckReport> {
    if (j as i64) < k as i64 {
        return Err(Error::Precondition(format!("energy bound needs j >= k, got j = {j}, k = {k}")));
    }
    nonempty(corpus)?;
    let tiling = DyadicTiling::new(*corpus[0].grid(), k)?;
    let mut report = CheckReport::new("energy").with_cap(ENERGY_CAP);
    report.param("n", tiling.grid().dim() as f64).param("j", j as f64).param("k", k as f64);
    for (i, f) in corpus.iter().enumerate() {
        let norm = f.l2_norm();
        for &t in times {
            let evolved = localized_evolution(f, j, t, Sign::Plus, cutoffs)?;
            report.ratio(&format!("field-{i}"), t, x_norm(&evolved, 2.0, 2.0, &tiling)? / norm);
        }
    }
    Ok(report.finish())
}

/// `||S_j f||_a / (2^{nk/a'} ||f||_{X^{a,1}_k})` for every `k` of the scan.
///
/// The exponent `n/a'` is fitted from `scan_field` over `scan_ks`; the field should be smooth at
/// those cube scales (then the local `L^1` norms saturate Hölder).
pub fn check_reverse_holder(
    a: f64,
    j: u32,
    ks: &[i32],
    corpus: &[Field],
    scan_field: &Field,
    scan_ks: &[i32],
    cutoffs: &CutoffFamily,
) -> Result<CheckReport> {
    if let Some(&k) = ks.iter().chain(scan_ks).find(|&&k| (j as i64) > k as i64) {
        return Err(Error::Precondition(format!("reverse Hölder needs j <= k, got j = {j}, k = {k}")));
    }
    nonempty(corpus)?;
    corpus[0].same_grid(scan_field)?;
    let grid = *corpus[0].grid();
    let n = grid.dim() as f64;
    let exponent = n / conjugate(a);
    let mut report = CheckReport::new("reverse-holder");
    report.param("n", n).param("a", a).param("j", j as f64);

    let pieces = corpus.iter().map(|f| lebesgue_norm(&project_lp(f, j, cutoffs)?, a)).collect::<Result<Vec<_>>>()?;
    let scan_piece = lebesgue_norm(&project_lp(scan_field, j, cutoffs)?, a)?;
    for &k in ks {
        let tiling = DyadicTiling::new(grid, k)?;
        let prefactor = 2f64.powf(exponent * k as f64);
        for (f, lhs) in corpus.iter().zip(&pieces) {
            report.ratio("corpus", k as f64, lhs / (prefactor * x_norm(f, a, 1.0, &tiling)?));
        }
    }
    let mut scan = Vec::with_capacity(scan_ks.len());
    for &k in scan_ks {
        let unscaled = scan_piece / x_norm(scan_field, a, 1.0, &DyadicTiling::new(grid, k)?)?;
        report.measurement("scan", k as f64, unscaled);
        scan.push(unscaled);
    }
    if scan_ks.len() >= 2 {
        let ks_f: Vec<f64> = scan_ks.iter().map(|&k| k as f64).collect();
        let tolerance = (0.1 * exponent).max(0.05);
        report.slopes.push(dyadic_fit("k-scan", &ks_f, &scan, exponent, Some(tolerance))?);
    }
    Ok(report.finish())
}

/// `||P_0 f||_{X^{b,p}_k} / (2^{-nk(1/a - 1/b)} ||f||_{X^{a,p}_k})` over a spike corpus and a
/// spread-out corpus.
///
/// The `k`-exponent is fitted on the first spike over `scan_ks`. It is sharp only for
/// `a = 1, b = inf`, where the bound collapses to `||P_0 f||_{X^{inf,1}_k} <~ 2^{-nk} ||f||_1`;
/// other exponents get an informational fit. For `a < b` the spread corpus must not exceed the
/// spikes' largest ratio.
#[allow(clippy::too_many_arguments)]
pub fn check_young(
    a: f64,
    b: f64,
    p: f64,
    ks: &[i32],
    spikes: &[Field],
    spread: &[Field],
    scan_ks: &[i32],
    cutoffs: &CutoffFamily,
) -> Result<CheckReport> {
    if a > b {
        return Err(Error::Precondition(format!("Young's inequality needs a <= b, got a = {a}, b = {b}")));
    }
    if let Some(&k) = ks.iter().chain(scan_ks).find(|&&k| k < 0) {
        return Err(Error::Precondition(format!("Young's inequality needs k >= 0, got {k}")));
    }
    nonempty(spikes)?;
    nonempty(spread)?;
    spikes[0].same_grid(&spread[0])?;
    let grid = *spikes[0].grid();
    let n = grid.dim() as f64;
    let exponent = -n * (1.0 / a - 1.0 / b);
    let mut report = CheckReport::new("young");
    report.param("n", n).param("a", a).param("b", b).param("p", p);

    let low = |fs: &[Field]| fs.iter().map(|f| project_low(f, cutoffs).into_physical()).collect::<Vec<_>>();
    let (spike_low, spread_low) = (low(spikes), low(spread));
    let (mut spike_max, mut spread_max) = (0.0f64, 0.0f64);
    for &k in ks {
        let tiling = DyadicTiling::new(grid, k)?;
        let prefactor = 2f64.powf(exponent * k as f64);
        for (f, lf) in spikes.iter().zip(&spike_low) {
            let ratio = x_norm(lf, b, p, &tiling)? / (prefactor * x_norm(f, a, p, &tiling)?);
            spike_max = spike_max.max(ratio);
            report.ratio("spikes", k as f64, ratio);
        }
        for (f, lf) in spread.iter().zip(&spread_low) {
            let ratio = x_norm(lf, b, p, &tiling)? / (prefactor * x_norm(f, a, p, &tiling)?);
            spread_max = spread_max.max(ratio);
            report.ratio("spread", k as f64, ratio);
        }
    }
    if a < b {
        report.compare("spread max ratio over spike max ratio", spread_max / spike_max, 1.0);
    }
    let mut scan = Vec::with_capacity(scan_ks.len());
    for &k in scan_ks {
        let tiling = DyadicTiling::new(grid, k)?;
        let unscaled = x_norm(&spike_low[0], b, p, &tiling)? / x_norm(&spikes[0], a, p, &tiling)?;
        report.measurement("scan", k as f64, unscaled);
        scan.push(unscaled);
    }
    if scan_ks.len() >= 2 {
        let ks_f: Vec<f64> = scan_ks.iter().map(|&k| k as f64).collect();
        let sharp = a == 1.0 && b.is_infinite();
        let tolerance = sharp.then_some(0.1 * exponent.abs());
        report.slopes.push(dyadic_fit("k-scan", &ks_f, &scan, exponent, tolerance)?);
    }
    Ok(report.finish())
}
