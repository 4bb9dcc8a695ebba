use thiserror::Error;

use crate::solver::IterationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("grid of {points} points exceeds the memory budget of {budget} points")]
    BudgetExceeded { points: u128, budget: u128 },

    #[error("fields live on different grids")]
    GridMismatch,

    #[error("dyadic scale {j} is outside 0..={max}")]
    ScaleOutOfRange { j: u32, max: u32 },

    #[error("invalid exponent: {0}")]
    InvalidExponent(String),

    #[error("invalid dyadic tiling: {0}")]
    InvalidTiling(String),

    #[error("invalid time grid: {0}")]
    InvalidTimeGrid(String),

    #[error("time {t} lies outside the sampled interval [{start}, {end}]")]
    TimeOutOfRange { t: f64, start: f64, end: f64 },

    #[error("exponent window violated: {0}")]
    ExponentWindow(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("denominator vanishes: {0}")]
    ZeroDenominator(String),

    #[error("Picard iteration diverged after {} iterations", .0.iterations.len())]
    Diverged(Box<IterationReport>),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("malformed field file: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
