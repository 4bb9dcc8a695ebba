//! Lebesgue, Sobolev, two-scale `X^{r,p}_k`, space-time and iteration norms.
//!
//! Spatial integrals are cell-weighted Riemann sums; temporal integrals use the trapezoid rule.
//! Exponents are `f64` in `[1, inf]`, with `f64::INFINITY` meaning a maximum.

mod spacetime;
mod spatial;
mod star;
mod tiling;

pub use spacetime::{spacetime_norm, spatial_norm, temporal_norm, NormSpec, SpaceTimeField, SpatialNorm};
pub use spatial::{cube_norms, lebesgue_norm, sobolev_norm, x_norm};
pub use star::{star_norm, StarNorm};
pub use tiling::DyadicTiling;

pub(crate) use spacetime::uniform_times;
