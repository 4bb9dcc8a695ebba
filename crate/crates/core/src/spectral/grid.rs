use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest number of grid points a single field may hold (about 512 MiB of complex samples).
pub const DEFAULT_POINT_BUDGET: u128 = 1 << 25;

/// A periodic torus `[0, L)^n` sampled by `N` points per axis.
///
/// Both `N` and `L` are powers of two so that every dyadic cube of side `2^-k`
/// down to the grid spacing is made of whole cells.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    dim: u32,
    points: usize,
    length: f64,
}

impl GridSpec {
    pub fn new(dim: u32, points: usize, length: f64) -> Result<Self> {
        Self::with_budget(dim, points, length, DEFAULT_POINT_BUDGET)
    }

    pub fn with_budget(dim: u32, points: usize, length: f64, budget: u128) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidGrid("dimension must be at least 1".into()));
        }
        if points < 2 || !points.is_power_of_two() {
            return Err(Error::InvalidGrid(format!(
                "points per axis must be a power of two >= 2, got {points}"
            )));
        }
        if !(length.is_finite() && length > 0.0) || log2_exact(length).is_none() {
            return Err(Error::InvalidGrid(format!(
                "torus length must be a power of two, got {length}"
            )));
        }
        let total = (points as u128).checked_pow(dim).unwrap_or(u128::MAX);
        if total > budget {
            return Err(Error::BudgetExceeded { points: total, budget });
        }
        Ok(Self { dim, points, length })
    }

    /// The canonical unit torus.
    pub fn unit(dim: u32, points: usize) -> Result<Self> {
        Self::new(dim, points, 1.0)
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    /// Points per axis.
    pub fn points(&self) -> usize {
        self.points
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn log2_length(&self) -> i32 {
        log2_exact(self.length).expect("validated at construction")
    }

    pub fn log2_points(&self) -> u32 {
        self.points.trailing_zeros()
    }

    pub fn total_points(&self) -> usize {
        self.points.pow(self.dim)
    }

    pub fn spacing(&self) -> f64 {
        self.length / self.points as f64
    }

    /// Volume of one grid cell, `h^n`.
    pub fn cell_volume(&self) -> f64 {
        self.spacing().powi(self.dim as i32)
    }

    pub fn volume(&self) -> f64 {
        self.length.powi(self.dim as i32)
    }

    /// Signed mode index along one axis, in `[-N/2, N/2)`.
    pub fn mode_index(&self, idx: usize) -> i64 {
        let n = self.points as i64;
        let i = idx as i64;
        if i < n / 2 {
            i
        } else {
            i - n
        }
    }

    /// Angular wavenumber `2 pi m / L` of one axis index.
    pub fn wavenumber(&self, idx: usize) -> f64 {
        2.0 * PI * self.mode_index(idx) as f64 / self.length
    }

    /// Largest per-axis wavenumber magnitude, `pi N / L`.
    pub fn nyquist(&self) -> f64 {
        PI * self.points as f64 / self.length
    }

    /// Largest `|xi|` present on the grid (the corner of the frequency cube).
    pub fn max_radius(&self) -> f64 {
        self.nyquist() * (self.dim as f64).sqrt()
    }

    /// Physical coordinate of an axis index.
    pub fn coordinate(&self, idx: usize) -> f64 {
        idx as f64 * self.spacing()
    }

    /// `|xi|` for every flat frequency index, in row-major order.
    pub fn radii(&self) -> Vec<f64> {
        let axis: Vec<f64> = (0..self.points).map(|i| self.wavenumber(i).powi(2)).collect();
        let mut out = Vec::with_capacity(self.total_points());
        let mut idx = vec![0usize; self.dim as usize];
        let mut partial = vec![0.0f64; self.dim as usize + 1];
        let last = self.dim as usize - 1;
        loop {
            for d in 0..last {
                partial[d + 1] = partial[d] + axis[idx[d]];
            }
            let base = partial[last];
            for a in &axis {
                out.push((base + a).sqrt());
            }
            // odometer over all axes but the last
            let mut d = last;
            loop {
                if d == 0 {
                    return out;
                }
                d -= 1;
                idx[d] += 1;
                if idx[d] < self.points {
                    break;
                }
                idx[d] = 0;
            }
        }
    }

    /// Multi-index of a flat row-major offset (last axis fastest).
    pub fn unflatten(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0; self.dim as usize];
        for d in (0..self.dim as usize).rev() {
            idx[d] = flat % self.points;
            flat /= self.points;
        }
        idx
    }

    pub fn flatten(&self, idx: &[usize]) -> usize {
        idx.iter().fold(0, |acc, &i| acc * self.points + i)
    }
}

/// `log2(x)` when `x` is an exact power of two.
fn log2_exact(x: f64) -> Option<i32> {
    if !(x.is_finite() && x > 0.0) {
        return None;
    }
    let e = x.log2().round() as i32;
    (2f64.powi(e) == x).then_some(e)
}
