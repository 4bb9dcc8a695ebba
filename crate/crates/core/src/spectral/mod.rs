//! Periodic grids, fields, unitary transforms and radial Fourier multipliers.

mod fft;
mod field;
mod grid;
mod multiplier;
pub mod tswf;

pub use field::{Field, Representation};
pub use grid::{GridSpec, DEFAULT_POINT_BUDGET};
pub use multiplier::{apply_radial_multiplier, apply_radial_symbol, RadialProfile};
