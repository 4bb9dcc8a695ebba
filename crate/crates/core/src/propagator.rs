//! Free waves, the Duhamel operator and their frequency-localized half-wave pieces.
//!
//! Everything is evaluated spectrally from exact per-mode formulas; the only time
//! discretization is the trapezoid rule in the Duhamel integral.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lp::{CutoffFamily, Sign};
use crate::norms::SpaceTimeField;
use crate::spectral::{Field, Representation};

/// Initial position `f` and velocity `g` on one grid.
#[derive(Debug, Clone)]
pub struct CauchyData {
    f: Field,
    g: Field,
}

impl CauchyData {
    pub fn new(f: Field, g: Field) -> Result<Self> {
        f.same_grid(&g)?;
        Ok(Self { f, g })
    }

    /// Data at rest: `g = 0`.
    pub fn position(f: Field) -> Self {
        let g = Field::zeros(*f.grid(), Representation::Physical);
        Self { f, g }
    }

    pub fn f(&self) -> &Field {
        &self.f
    }

    pub fn g(&self) -> &Field {
        &self.g
    }
}

/// `sin(t s) / s`, continued by `t` at `s = 0`.
pub(crate) fn sinc_kernel(t: f64, s: f64) -> f64 {
    if s == 0.0 {
        t
    } else {
        (t * s).sin() / s
    }
}

/// `u_0(t) = cos(t|D|) f + sin(t|D|)/|D| g`, returned in physical representation.
pub fn free_solution(data: &CauchyData, t: f64) -> Field {
    let f = data.f.to(Representation::Frequency);
    let g = data.g.to(Representation::Frequency);
    let radii = f.grid().radii();
    let samples = f
        .samples()
        .iter()
        .zip(g.samples())
        .zip(radii)
        .map(|((&a, &b), s)| a * (t * s).cos() + b * sinc_kernel(t, s))
        .collect();
    Field::from_parts(*f.grid(), Representation::Frequency, samples).into_physical()
}

/// Free solution sampled at `M + 1` uniform times on `[0, end]`.
pub fn free_solution_frames(data: &CauchyData, end: f64, intervals: usize) -> Result<SpaceTimeField> {
    SpaceTimeField::sample(0.0, end, intervals, |t| Ok(free_solution(data, t)))
}

/// Wave energy `||d_t u||^2 + ||grad u||^2` of the free solution at time `t`.
pub fn wave_energy(data: &CauchyData, t: f64) -> f64 {
    let f = data.f.to(Representation::Frequency);
    let g = data.g.to(Representation::Frequency);
    let radii = f.grid().radii();
    let sum: f64 = f
        .samples()
        .iter()
        .zip(g.samples())
        .zip(radii)
        .map(|((&a, &b), s)| {
            let (sin, cos) = (t * s).sin_cos();
            let u = a * cos + b * sinc_kernel(t, s);
            let ut = -a * (s * sin) + b * cos;
            ut.norm_sqr() + s * s * u.norm_sqr()
        })
        .sum();
    f.grid().cell_volume() * sum
}

fn check_time(forcing: &SpaceTimeField, t: f64) -> Result<()> {
    let tol = 1e-12 * forcing.end().abs().max(1.0);
    if t < forcing.start() - tol || t > forcing.end() + tol {
        return Err(Error::TimeOutOfRange { t, start: forcing.start(), end: forcing.end() });
    }
    Ok(())
}

/// Trapezoid nodes on `[start, t]`: `(frame index, weight)` over the stored frames, plus the
/// length of a trailing partial panel when `t` falls strictly between two frames.
fn quadrature_nodes(forcing: &SpaceTimeField, t: f64) -> (Vec<(usize, f64)>, f64) {
    let dt = forcing.step();
    let pos = (t - forcing.start()) / dt;
    let last_full = (pos + 1e-9).floor().max(0.0) as usize;
    let last_full = last_full.min(forcing.times().len() - 1);
    let tail = (t - forcing.times()[last_full]).max(0.0);
    let tail = if tail <= 1e-12 * dt { 0.0 } else { tail };
    let mut nodes = Vec::with_capacity(last_full + 1);
    for l in 0..=last_full {
        let mut w = if l == 0 || l == last_full { 0.5 * dt } else { dt };
        if last_full == 0 {
            w = 0.0;
        }
        if l == last_full {
            w += 0.5 * tail;
        }
        nodes.push((l, w));
    }
    (nodes, tail)
}

/// `Box^{-1} F(t) = int_{start}^{t} sin((t-s)|D|)/|D| F(s) ds` by the composite trapezoid rule
/// over the stored frames, with the exact spectral kernel at every node.
///
/// When `t` falls between frames the last panel is shortened; its endpoint term vanishes
/// because the kernel is zero at `s = t`. Returned in physical representation.
pub fn duhamel(forcing: &SpaceTimeField, t: f64) -> Result<Field> {
    check_time(forcing, t)?;
    let grid = *forcing.grid();
    let radii = grid.radii();
    let (nodes, _) = quadrature_nodes(forcing, t);
    let mut acc = vec![Complex64::default(); grid.total_points()];
    for (l, w) in nodes {
        if w == 0.0 {
            continue;
        }
        let lag = t - forcing.times()[l];
        let frame = forcing.frames()[l].to(Representation::Frequency);
        for ((a, &v), &s) in acc.iter_mut().zip(frame.samples()).zip(&radii) {
            *a += v * (w * sinc_kernel(lag, s));
        }
    }
    Ok(Field::from_parts(grid, Representation::Frequency, acc).into_physical())
}

/// The Duhamel integral at every stored time, in physical representation.
///
/// Uses `sin((t-s)w)/w = sin(tw)/w cos(sw) - cos(tw) sin(sw)/w` so the trapezoid sums can be
/// accumulated in one pass; node values and weights are those of [`duhamel`].
pub fn duhamel_frames(forcing: &SpaceTimeField) -> Result<SpaceTimeField> {
    let grid = *forcing.grid();
    let radii = grid.radii();
    let dt = forcing.step();
    let len = grid.total_points();
    let mut sum_cos = vec![Complex64::default(); len];
    let mut sum_sin = vec![Complex64::default(); len];
    let mut first_cos = vec![Complex64::default(); len];
    let mut first_sin = vec![Complex64::default(); len];
    let mut frames = Vec::with_capacity(forcing.times().len());
    for (i, (&t, frame)) in forcing.times().iter().zip(forcing.frames()).enumerate() {
        let tau = t - forcing.start();
        let spec = frame.to(Representation::Frequency);
        let mut out = vec![Complex64::default(); len];
        for m in 0..len {
            let s = radii[m];
            let cos = (tau * s).cos();
            let sin_over = sinc_kernel(tau, s);
            let v = spec.samples()[m];
            let (bc, bs) = (v * cos, v * sin_over);
            if i == 0 {
                first_cos[m] = bc;
                first_sin[m] = bs;
            }
            sum_cos[m] += bc;
            sum_sin[m] += bs;
            if i > 0 {
                // trapezoid: full weights minus half of both endpoints
                let c = dt * (sum_cos[m] - 0.5 * (first_cos[m] + bc));
                let d = dt * (sum_sin[m] - 0.5 * (first_sin[m] + bs));
                out[m] = c * sin_over - d * cos;
            }
        }
        frames.push(Field::from_parts(grid, Representation::Frequency, out).into_physical());
    }
    SpaceTimeField::new(forcing.times().to_vec(), frames)
}

/// `S_j u(t)` for `u = u_0 + Box^{-1} F`, assembled from the half-wave pieces
/// `U_j^{+-}(t) = beta_j(|D|) exp(+-it|D|)`.
///
/// The cosine splits as two halves; `sin(t|D|)/|D|` is written as `+-i 2^{-j} U_j^{+-}(t)`
/// with the companion cutoff `-2^j / (2|xi|)` on the annulus, and the Duhamel term as
/// `+-i 2^{-j} int U_j^{+-}(t) U_j^{+-}(s)^* S_j F(s) ds` with the same companion cutoff.
/// Returned in physical representation.
pub fn localized_pieces(
    data: &CauchyData,
    forcing: Option<&SpaceTimeField>,
    j: u32,
    t: f64,
    cutoffs: &CutoffFamily,
) -> Result<Field> {
    let grid = *data.f.grid();
    let max = cutoffs.j_max(&grid);
    if j == 0 || j > max {
        return Err(Error::ScaleOutOfRange { j, max });
    }
    if let Some(fr) = forcing {
        if *fr.grid() != grid {
            return Err(Error::GridMismatch);
        }
        check_time(fr, t)?;
    }
    let beta = cutoffs.beta(j);
    let scale = 2f64.powi(-(j as i32));
    let companion = |s: f64| if s == 0.0 { 0.0 } else { -1.0 / (2.0 * scale * s) };
    let radii = grid.radii();
    let f = data.f.to(Representation::Frequency);
    let g = data.g.to(Representation::Frequency);
    let i = Complex64::new(0.0, 1.0);

    // per-sign accumulated forcing integral  sum_l w_l exp(-+ i s_l |xi|) F(s_l)
    let mut forced: [Vec<Complex64>; 2] = [vec![Complex64::default(); radii.len()], vec![Complex64::default(); radii.len()]];
    if let Some(fr) = forcing {
        let (nodes, tail) = quadrature_nodes(fr, t);
        let mut push = |weight: f64, s0: f64, spec: &Field| {
            for (k, sign) in Sign::BOTH.iter().enumerate() {
                for ((acc, &v), &s) in forced[k].iter_mut().zip(spec.samples()).zip(&radii) {
                    *acc += v * Complex64::from_polar(weight * beta.eval(s), -sign.value() * s0 * s);
                }
            }
        };
        for (l, w) in nodes {
            if w != 0.0 {
                push(w, fr.times()[l], &fr.frames()[l].to(Representation::Frequency));
            }
        }
        if tail > 0.0 {
            // endpoint value at s = t by linear interpolation between neighbouring frames
            let l = ((t - fr.start()) / fr.step()).floor() as usize;
            let theta = (t - fr.times()[l]) / fr.step();
            let a = fr.frames()[l].to(Representation::Frequency);
            let b = fr.frames()[(l + 1).min(fr.frames().len() - 1)].to(Representation::Frequency);
            let end = a.combine(Complex64::new(1.0 - theta, 0.0), &b, Complex64::new(theta, 0.0))?;
            push(0.5 * tail, t, &end);
        }
    }

    let mut out = vec![Complex64::default(); radii.len()];
    for (k, sign) in Sign::BOTH.iter().enumerate() {
        let sv = sign.value();
        for m in 0..radii.len() {
            let s = radii[m];
            let b = beta.eval(s);
            if b == 0.0 {
                continue;
            }
            let evolve = Complex64::from_polar(1.0, sv * t * s);
            let half = 0.5 * b * evolve * f.samples()[m];
            let velocity = sv * i * scale * companion(s) * b * evolve * g.samples()[m];
            let duhamel = sv * i * scale * companion(s) * evolve * forced[k][m];
            out[m] += half + velocity + duhamel;
        }
    }
    Ok(Field::from_parts(grid, Representation::Frequency, out).into_physical())
}

/// `sup` over interior frames of `||(d_tt - Lap) u - F||_2`, with centred second differences in
/// time and the Laplacian applied spectrally.
pub fn residual_dalembertian(u: &SpaceTimeField, forcing: &SpaceTimeField) -> Result<f64> {
    if u.times().len() < 3 {
        return Err(Error::InvalidTimeGrid("the residual needs at least three frames".into()));
    }
    if u.grid() != forcing.grid() || u.times().len() != forcing.times().len() {
        return Err(Error::GridMismatch);
    }
    let grid = *u.grid();
    let radii = grid.radii();
    let dt2 = u.step() * u.step();
    let spectra: Vec<Field> = u.frames().iter().map(|f| f.to(Representation::Frequency)).collect();
    let mut worst = 0.0f64;
    for i in 1..spectra.len() - 1 {
        let rhs = forcing.frames()[i].to(Representation::Frequency);
        let sum: f64 = (0..radii.len())
            .map(|m| {
                let utt = (spectra[i + 1].samples()[m] - 2.0 * spectra[i].samples()[m] + spectra[i - 1].samples()[m]) / dt2;
                (utt + radii[m] * radii[m] * spectra[i].samples()[m] - rhs.samples()[m]).norm_sqr()
            })
            .sum();
        worst = worst.max((grid.cell_volume() * sum).sqrt());
    }
    Ok(worst)
}
