//! Picard iteration: trivial and contracting runs, divergence, probes and dependence on data.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twoscale_core::lab::{gaussian_data, seeded_field};
use twoscale_core::norms::sobolev_norm;
use twoscale_core::propagator::{free_solution_frames, residual_dalembertian};
use twoscale_core::solver::{contraction_probe, nonlinearity, picard_solve, SolverConfig};
use twoscale_core::*;

const P: f64 = 1.86;

fn setup(points: usize) -> (GridSpec, ProblemParams, CutoffFamily) {
    (GridSpec::unit(4, points).unwrap(), ProblemParams::new(4, 0.1, P).unwrap(), CutoffFamily::default())
}

fn config(final_time: f64, steps: usize, mu: f64) -> SolverConfig {
    let mut c = SolverConfig::new(final_time, steps, P);
    c.mu = mu;
    c
}

fn sup_distance(u: &SpaceTimeField, v: &SpaceTimeField, gamma: f64) -> f64 {
    u.frames().iter().zip(v.frames()).map(|(a, b)| sobolev_norm(&a.sub(b).unwrap(), gamma)).fold(0.0, f64::max)
}

#[test]
fn power_map() {
    let grid = GridSpec::unit(2, 8).unwrap();
    let zero = Field::zeros(grid, Representation::Physical);
    assert_eq!(nonlinearity(&zero, P, 1.0).unwrap(), zero);
    let c = Field::from_fn(grid, |_| Complex64::new(-0.7, 0.0));
    let expected = -(0.7f64.powf(P));
    assert!(nonlinearity(&c, P, 1.0).unwrap().samples().iter().all(|v| (v.re - expected).abs() < 1e-15 && v.im == 0.0));
    assert!(nonlinearity(&c, 1.0, 1.0).is_err());

    // |F(a) - F(b)| <= p |a - b| (|a|^{p-1} + |b|^{p-1}) pointwise, hence in sup norm
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..50 {
        let mut sample = |lo: f64, hi: f64| -> Vec<Complex64> {
            (0..grid.total_points()).map(|_| Complex64::new(rng.random_range(lo..hi), rng.random_range(lo..hi))).collect()
        };
        let a = Field::new(grid, Representation::Physical, sample(-2.0, 2.0)).unwrap();
        let b = a.add(&Field::new(grid, Representation::Physical, sample(-0.3, 0.3)).unwrap()).unwrap();
        let sup = |f: &Field| f.samples().iter().map(|v| v.norm()).fold(0.0, f64::max);
        let lhs = sup(&nonlinearity(&a, P, 1.0).unwrap().sub(&nonlinearity(&b, P, 1.0).unwrap()).unwrap());
        let rhs = P * sup(&a.sub(&b).unwrap()) * (sup(&a).powf(P - 1.0) + sup(&b).powf(P - 1.0));
        assert!(lhs <= rhs * (1.0 + 1e-12));
    }
}

#[test]
fn linear_problem_converges_at_once() {
    let (grid, params, cutoffs) = setup(8);
    let data = gaussian_data(grid, 0.1, 1.0).unwrap();
    let (u, report) = picard_solve(&data, &config(0.5, 8, 0.0), &params, &cutoffs).unwrap();
    assert!(report.converged);
    assert_eq!(report.iterations.len(), 1);
    assert_eq!(report.iterations[0].difference, 0.0);
    assert_eq!(u, free_solution_frames(&data, 0.5, 8).unwrap());
    assert_eq!(report.fixed_point_residual, Some(0.0));
}

#[test]
fn small_data_contracts() {
    let (grid, params, cutoffs) = setup(8);
    let data = gaussian_data(grid, 0.1, 1e-2).unwrap();
    let (u, report) = picard_solve(&data, &config(0.25, 16, -1.0), &params, &cutoffs).unwrap();
    assert!(report.converged && !report.left_ball);
    assert!(report.contraction_ratio.unwrap() <= 0.5);
    assert!(report.fixed_point_residual.unwrap() <= 1e-7 * report.ball_radius);
    assert!(report.iterations.iter().all(|s| s.star <= report.ball_radius));
    assert_eq!(report.region, RegionLabel::NewWellPosed);

    // the converged iterate solves the equation up to the time-stepping error
    let residual = |steps: usize| {
        let (u, _) = picard_solve(&data, &config(0.25, steps, -1.0), &params, &cutoffs).unwrap();
        let forcing = u.map_frames(|f| nonlinearity(f, P, -1.0)).unwrap();
        residual_dalembertian(&u, &forcing).unwrap()
    };
    let ratio = residual(16) / residual(32);
    assert!((3.0..=5.0).contains(&ratio), "ratio {ratio}");
    assert_eq!(u.times().len(), 17);
}

#[test]
fn focusing_large_data_diverges() {
    let (grid, params, cutoffs) = setup(8);
    let data = gaussian_data(grid, 0.1, 100.0).unwrap();
    let mut c = config(1.0, 16, 1.0);
    c.max_iterations = 20;
    match picard_solve(&data, &c, &params, &cutoffs) {
        Err(Error::Diverged(report)) => {
            assert!(!report.converged);
            assert!(report.iterations.len() <= 20);
        }
        other => panic!("expected divergence, got {other:?}"),
    }
}

#[test]
fn preconditions() {
    let (grid, _, cutoffs) = setup(8);
    let data = gaussian_data(grid, 0.1, 1e-2).unwrap();
    let endpoint = ProblemParams::new(4, 0.0, 1.8).unwrap();
    let mut c = SolverConfig::new(0.25, 8, 1.8);
    assert!(matches!(picard_solve(&data, &c, &endpoint, &cutoffs), Err(Error::Precondition(_))));
    c.allow_unclassified = true;
    assert!(picard_solve(&data, &c, &endpoint, &cutoffs).is_ok());

    let params = ProblemParams::new(4, 0.1, P).unwrap();
    let rough = CauchyData::position(seeded_field(grid, 1, 3).unwrap());
    assert!(matches!(picard_solve(&rough, &config(0.25, 8, -1.0), &params, &cutoffs), Err(Error::Precondition(_))));
    assert!(picard_solve(&data, &config(2.0, 8, -1.0), &params, &cutoffs).is_err());
    assert!(picard_solve(&data, &SolverConfig::new(0.25, 8, 1.9), &params, &cutoffs).is_err());
}

#[test]
fn contraction_probe_scaling() {
    let (grid, params, cutoffs) = setup(8);
    let data = gaussian_data(grid, 0.1, 1e-2).unwrap();
    let c = config(0.25, 8, -1.0);
    let u = free_solution_frames(&data, 0.25, 8).unwrap();
    let zero = u.map_frames(|f| Ok(f.scale(Complex64::default()))).unwrap();
    assert!(matches!(contraction_probe(&u, &u, &c, &params, &cutoffs), Err(Error::ZeroDenominator(_))));

    let base = contraction_probe(&u, &zero, &c, &params, &cutoffs).unwrap();
    let doubled = u.map_frames(|f| Ok(f.scale(Complex64::new(2.0, 0.0)))).unwrap();
    let twice = contraction_probe(&doubled, &zero, &c, &params, &cutoffs).unwrap();
    assert!((twice / base / 2f64.powf(P - 1.0) - 1.0).abs() < 1e-9);

    let ratios: Vec<f64> = [0.5, 0.25, 0.125]
        .iter()
        .map(|&t| {
            let u = free_solution_frames(&data, t, 8).unwrap();
            let zero = u.map_frames(|f| Ok(f.scale(Complex64::default()))).unwrap();
            contraction_probe(&u, &zero, &config(t, 8, -1.0), &params, &cutoffs).unwrap()
        })
        .collect();
    assert!(ratios.windows(2).all(|w| w[1] < w[0]), "{ratios:?}");
}

#[test]
fn continuous_dependence_on_data() {
    let (grid, params, cutoffs) = setup(8);
    let data = gaussian_data(grid, 0.1, 1e-2).unwrap();
    let c = config(0.25, 8, -1.0);
    let (u, _) = picard_solve(&data, &c, &params, &cutoffs).unwrap();
    let direction = gaussian_data(grid, 0.1, 1.0).unwrap().f().map(|v| v * Complex64::new(0.0, 1.0));
    let changes: Vec<f64> = [1e-3, 1e-4]
        .iter()
        .map(|&delta| {
            let moved = CauchyData::position(data.f().add(&direction.scale(Complex64::new(delta, 0.0))).unwrap());
            let (v, _) = picard_solve(&moved, &c, &params, &cutoffs).unwrap();
            sup_distance(&u, &v, 0.1)
        })
        .collect();
    let slope = (changes[0] / changes[1]).log10();
    assert!((slope - 1.0).abs() < 0.05, "slope {slope}");
}

#[test]
fn frequency_localized_model_problem() {
    let (grid, params, cutoffs) = setup(8);
    let data = gaussian_data(grid, 0.1, 1e-2).unwrap();
    let mut c = config(0.25, 8, -1.0);
    c.localize = Some(1);
    let (_, report) = picard_solve(&data, &c, &params, &cutoffs).unwrap();
    assert!(report.converged);
    assert!(report.contraction_ratio.unwrap_or(0.0) <= 0.5);
}
