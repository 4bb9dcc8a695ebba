//! Numerical laboratory for two-scale Lebesgue norms and semilinear waves on the torus.
//!
//! Fields live on a periodic grid ([`spectral`]); [`lp`] splits them into dyadic
//! frequency pieces; [`norms`] measures them with cube-tiled mixed norms;
//! [`propagator`] evolves linear waves; [`atlas`] classifies `(n, gamma, p)`;
//! [`solver`] runs the Picard iteration and [`lab`] checks the estimates numerically.

// Guards written as `!(x > 0.0)` also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod atlas;
pub mod error;
pub mod lab;
pub mod lp;
pub mod norms;
pub mod propagator;
pub mod solver;
pub mod spectral;

pub use atlas::{ProblemParams, RegionLabel};
pub use error::{Error, Result};
pub use lp::CutoffFamily;
pub use norms::{DyadicTiling, NormSpec, SpaceTimeField, SpatialNorm};
pub use propagator::CauchyData;
pub use spectral::{Field, GridSpec, RadialProfile, Representation};
