use serde::{Deserialize, Serialize};

use super::spatial::{check_exponent, lebesgue_norm, sobolev_norm, x_norm};
use super::tiling::DyadicTiling;
use crate::error::{Error, Result};
use crate::spectral::{Field, GridSpec};

/// Relative tolerance on the spacing of a uniform time grid.
const UNIFORM_TOL: f64 = 1e-9;

/// Frames `u(t_i, .)` on a uniform time grid, all on one spatial grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SpaceTimeField {
    times: Vec<f64>,
    frames: Vec<Field>,
}

impl SpaceTimeField {
    pub fn new(times: Vec<f64>, frames: Vec<Field>) -> Result<Self> {
        if times.len() < 2 || times.len() != frames.len() {
            return Err(Error::InvalidTimeGrid(format!(
                "need at least two times with one frame each, got {} times and {} frames",
                times.len(),
                frames.len()
            )));
        }
        let dt = times[1] - times[0];
        if !(dt > 0.0) {
            return Err(Error::InvalidTimeGrid("times must be strictly increasing".into()));
        }
        let span = times[times.len() - 1] - times[0];
        for w in times.windows(2) {
            if !(w[1] > w[0]) || ((w[1] - w[0]) - dt).abs() > UNIFORM_TOL * span.max(1.0) {
                return Err(Error::InvalidTimeGrid("time grid must be uniform and increasing".into()));
            }
        }
        let grid = *frames[0].grid();
        if frames.iter().any(|f| *f.grid() != grid) {
            return Err(Error::GridMismatch);
        }
        Ok(Self { times, frames })
    }

    /// Frames `f(t_i)` at `t_i = start + i (end - start) / intervals`.
    pub fn sample(start: f64, end: f64, intervals: usize, f: impl FnMut(f64) -> Result<Field>) -> Result<Self> {
        if intervals == 0 || !(end > start) {
            return Err(Error::InvalidTimeGrid("need a nonempty interval and at least one step".into()));
        }
        let times = uniform_times(start, end, intervals);
        let frames = times.iter().copied().map(f).collect::<Result<Vec<_>>>()?;
        Self::new(times, frames)
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn frames(&self) -> &[Field] {
        &self.frames
    }

    pub fn into_frames(self) -> Vec<Field> {
        self.frames
    }

    pub fn grid(&self) -> &GridSpec {
        self.frames[0].grid()
    }

    pub fn step(&self) -> f64 {
        self.times[1] - self.times[0]
    }

    pub fn start(&self) -> f64 {
        self.times[0]
    }

    pub fn end(&self) -> f64 {
        self.times[self.times.len() - 1]
    }

    /// Applies `f` to every frame, keeping the time grid.
    pub fn map_frames(&self, f: impl FnMut(&Field) -> Result<Field>) -> Result<Self> {
        let frames = self.frames.iter().map(f).collect::<Result<Vec<_>>>()?;
        Self::new(self.times.clone(), frames)
    }

    /// The frames with `t <= end` (inclusive, up to rounding).
    pub fn truncate(&self, end: f64) -> Result<Self> {
        let tol = UNIFORM_TOL * self.end().abs().max(1.0);
        let keep = self.times.iter().take_while(|&&t| t <= end + tol).count();
        Self::new(self.times[..keep].to_vec(), self.frames[..keep].to_vec())
    }
}

pub(crate) fn uniform_times(start: f64, end: f64, intervals: usize) -> Vec<f64> {
    (0..=intervals).map(|i| start + (end - start) * i as f64 / intervals as f64).collect()
}

/// Spatial part of a space-time norm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum SpatialNorm {
    Lebesgue { r: f64 },
    TwoScale { r: f64, p: f64, k: i32 },
    Sobolev { gamma: f64 },
}

/// `L^q_t` of a spatial norm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormSpec {
    pub temporal: f64,
    pub spatial: SpatialNorm,
}

impl NormSpec {
    pub fn new(temporal: f64, spatial: SpatialNorm) -> Self {
        Self { temporal, spatial }
    }
}

pub fn spatial_norm(field: &Field, spec: &SpatialNorm) -> Result<f64> {
    match *spec {
        SpatialNorm::Lebesgue { r } => lebesgue_norm(field, r),
        SpatialNorm::TwoScale { r, p, k } => x_norm(field, r, p, &DyadicTiling::new(*field.grid(), k)?),
        SpatialNorm::Sobolev { gamma } => Ok(sobolev_norm(field, gamma)),
    }
}

/// Trapezoid-weighted `L^q` norm of samples on a uniform grid of step `dt`; `q = inf` is the max.
pub fn temporal_norm(values: &[f64], dt: f64, q: f64) -> Result<f64> {
    check_exponent(q)?;
    if q.is_infinite() {
        return Ok(values.iter().copied().fold(0.0, f64::max));
    }
    let last = values.len() - 1;
    let sum: f64 = values
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let w = if i == 0 || i == last { 0.5 } else { 1.0 };
            w * v.powf(q)
        })
        .sum();
    Ok((dt * sum).powf(1.0 / q))
}

/// `||u||_{L^q_t Y_x}` with the trapezoid rule in time.
pub fn spacetime_norm(u: &SpaceTimeField, spec: &NormSpec) -> Result<f64> {
    check_exponent(spec.temporal)?;
    let per_frame = u.frames().iter().map(|f| spatial_norm(f, &spec.spatial)).collect::<Result<Vec<_>>>()?;
    temporal_norm(&per_frame, u.step(), spec.temporal)
}
