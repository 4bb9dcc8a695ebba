//! Fixtures shared by the kernel benchmarks in `benches/`.

use twoscale_core::lab::{gaussian_data, seeded_field};
use twoscale_core::{CauchyData, Field, GridSpec, SpaceTimeField};

/// Fixed seed so every run measures the same inputs.
const SEED: u64 = 7;

pub fn grid(n: u32, points: usize) -> GridSpec {
    GridSpec::unit(n, points).expect("benchmark grids fit the budget")
}

/// A band-limited field using half of the grid's modes.
pub fn field(n: u32, points: usize) -> Field {
    seeded_field(grid(n, points), SEED, points as i64 / 4).expect("valid corpus field")
}

pub fn small_data(n: u32, points: usize) -> CauchyData {
    gaussian_data(grid(n, points), 0.1, 1e-2).expect("valid Gaussian datum")
}

/// A forcing history with `steps` intervals on `[0, 1]`.
pub fn forcing(n: u32, points: usize, steps: usize) -> SpaceTimeField {
    let f = field(n, points);
    SpaceTimeField::sample(0.0, 1.0, steps, |t| Ok(f.scale(num_complex::Complex64::new(t.cos(), 0.0))))
        .expect("uniform time grid")
}
