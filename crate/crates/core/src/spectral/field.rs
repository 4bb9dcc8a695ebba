use num_complex::Complex64;
use rustfft::FftDirection;
use serde::{Deserialize, Serialize};

use super::fft::transform_in_place;
use super::grid::GridSpec;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Representation {
    Physical,
    Frequency,
}

/// Complex samples on a [`GridSpec`], in either physical or frequency representation.
///
/// Frequency samples are unitary DFT coefficients, so the cell-weighted L2 norm
/// `sqrt(h^n sum |u|^2)` reads the same in both representations.
#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    grid: GridSpec,
    repr: Representation,
    data: Vec<Complex64>,
}

impl Field {
    pub fn new(grid: GridSpec, repr: Representation, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != grid.total_points() {
            return Err(Error::InvalidGrid(format!(
                "expected {} samples, got {}",
                grid.total_points(),
                data.len()
            )));
        }
        Ok(Self { grid, repr, data })
    }

    pub fn zeros(grid: GridSpec, repr: Representation) -> Self {
        Self { grid, repr, data: vec![Complex64::default(); grid.total_points()] }
    }

    /// Samples `f(x)` at the grid points.
    pub fn from_fn(grid: GridSpec, f: impl Fn(&[f64]) -> Complex64) -> Self {
        let mut x = vec![0.0; grid.dim() as usize];
        let data = (0..grid.total_points())
            .map(|flat| {
                for (xi, i) in x.iter_mut().zip(grid.unflatten(flat)) {
                    *xi = grid.coordinate(i);
                }
                f(&x)
            })
            .collect();
        Self { grid, repr: Representation::Physical, data }
    }

    /// A single Fourier mode `amplitude * exp(i m . x 2 pi / L)` with integer mode vector `m`.
    pub fn plane_wave(grid: GridSpec, modes: &[i64], amplitude: Complex64) -> Result<Self> {
        if modes.len() != grid.dim() as usize {
            return Err(Error::InvalidGrid("mode vector has the wrong dimension".into()));
        }
        let half = grid.points() as i64 / 2;
        if modes.iter().any(|&m| m < -half || m >= half) {
            return Err(Error::InvalidGrid(format!("mode {modes:?} is not representable")));
        }
        let k = 2.0 * std::f64::consts::PI / grid.length();
        Ok(Self::from_fn(grid, |x| {
            let phase: f64 = x.iter().zip(modes).map(|(xi, &m)| k * m as f64 * xi).sum();
            amplitude * Complex64::from_polar(1.0, phase)
        }))
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn representation(&self) -> Representation {
        self.repr
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.data
    }

    pub fn into_samples(self) -> Vec<Complex64> {
        self.data
    }

    /// Converts to the requested representation (a no-op when already there).
    pub fn to(&self, target: Representation) -> Field {
        self.clone().into_repr(target)
    }

    pub fn into_repr(mut self, target: Representation) -> Field {
        if self.repr != target {
            let direction = match target {
                Representation::Frequency => FftDirection::Forward,
                Representation::Physical => FftDirection::Inverse,
            };
            transform_in_place(&mut self.data, self.grid.dim(), self.grid.points(), direction);
            self.repr = target;
        }
        self
    }

    pub fn into_physical(self) -> Field {
        self.into_repr(Representation::Physical)
    }

    pub fn into_frequency(self) -> Field {
        self.into_repr(Representation::Frequency)
    }

    /// Cell-weighted L2 norm, valid in either representation.
    pub fn l2_norm(&self) -> f64 {
        (self.grid.cell_volume() * self.data.iter().map(|v| v.norm_sqr()).sum::<f64>()).sqrt()
    }

    pub fn same_grid(&self, other: &Field) -> Result<()> {
        if self.grid == other.grid {
            Ok(())
        } else {
            Err(Error::GridMismatch)
        }
    }

    /// Pointwise map in the current representation.
    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Field {
        Field { grid: self.grid, repr: self.repr, data: self.data.iter().map(|&v| f(v)).collect() }
    }

    pub fn scale(&self, s: Complex64) -> Field {
        self.map(|v| v * s)
    }

    /// `a * self + b * other`, evaluated in `self`'s representation.
    pub fn combine(&self, a: Complex64, other: &Field, b: Complex64) -> Result<Field> {
        self.same_grid(other)?;
        let other = other.to(self.repr);
        let data = self.data.iter().zip(&other.data).map(|(&x, &y)| a * x + b * y).collect();
        Ok(Field { grid: self.grid, repr: self.repr, data })
    }

    pub fn add(&self, other: &Field) -> Result<Field> {
        self.combine(Complex64::new(1.0, 0.0), other, Complex64::new(1.0, 0.0))
    }

    pub fn sub(&self, other: &Field) -> Result<Field> {
        self.combine(Complex64::new(1.0, 0.0), other, Complex64::new(-1.0, 0.0))
    }

    pub(crate) fn data_mut(&mut self) -> &mut [Complex64] {
        &mut self.data
    }

    pub(crate) fn from_parts(grid: GridSpec, repr: Representation, data: Vec<Complex64>) -> Self {
        debug_assert_eq!(data.len(), grid.total_points());
        Self { grid, repr, data }
    }
}
