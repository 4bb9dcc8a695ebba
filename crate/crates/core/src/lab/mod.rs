//! Numerical checks of the linear and nonlinear estimates: bounded ratios against a cap and
//! log-log slopes against predicted exponents, plus the example generators they run on.

mod corpus;
mod decay;
mod embedding;
mod nonlinear;
mod regression;
mod report;
mod strichartz;
mod suite;

pub use corpus::{
    corpus_seeds, gaussian_data, knapp_resolvable, knapp_widths, make_bump, make_knapp, plane_wave_corpus, seeded_corpus,
    seeded_field, spike, spike_corpus, CORPUS_SEEDS,
};
pub use decay::{check_asymmetric_decay, check_decay, DecaySetup, PREFACTOR_TOLERANCE, TAU_SLOPE_TOLERANCE};
pub use embedding::{check_energy, check_reverse_holder, check_young, ENERGY_CAP};
pub use nonlinear::{check_nonlinear_uv, uv_sides};
pub use regression::{dyadic_fit, fit_line, power_law_fit, LineFit};
pub use report::{
    reports_csv, CheckReport, Comparison, Sample, SampleKind, SlopeFit, Value, DEFAULT_RATIO_CAP, MIN_POINTS_PER_DECADE,
    RESIDUAL_LIMIT,
};
pub use strichartz::{
    alpha_regime, check_one_sided_strichartz, check_strichartz_refinement, check_two_sided, strichartz_ratios,
    StrichartzSetup, TwoSidedSetup, REFINEMENT_TOLERANCE,
};
pub use suite::{admissible_r, resolve_suites, run_suite, SuiteConfig, SUITES};
