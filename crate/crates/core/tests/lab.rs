//! Example generators, regression, report plumbing and the checks at desk scale.

use num_complex::Complex64;
use twoscale_core::lab::*;
use twoscale_core::norms::lebesgue_norm;
use twoscale_core::propagator::free_solution_frames;
use twoscale_core::*;

#[test]
fn seeded_corpus_is_reproducible_and_resolution_independent() {
    let coarse = GridSpec::unit(2, 16).unwrap();
    let fine = GridSpec::unit(2, 32).unwrap();
    let a = seeded_field(coarse, 42, 5).unwrap();
    assert_eq!(a, seeded_field(coarse, 42, 5).unwrap());
    assert_ne!(a, seeded_field(coarse, 43, 5).unwrap());
    assert!((a.l2_norm() - 1.0).abs() < 1e-12);
    // the same trigonometric polynomial sampled twice as densely
    let b = seeded_field(fine, 42, 5).unwrap();
    let (pa, pb) = (a.samples(), b.samples());
    for i in 0..16 {
        for j in 0..16 {
            assert!((pa[i * 16 + j] - pb[2 * i * 32 + 2 * j]).norm() < 1e-12);
        }
    }
    assert!(seeded_field(coarse, 1, 8).is_err());
    assert_eq!(corpus_seeds(0, 20).len(), 20);
    assert_ne!(corpus_seeds(0, 3), corpus_seeds(1, 3));
}

#[test]
fn knapp_packet_lives_in_its_slab() {
    for (n, points) in [(2u32, 64usize), (3, 32)] {
        let grid = GridSpec::new(n, points, 4.0).unwrap();
        let j = (1..8).rev().find(|&j| knapp_resolvable(j, &grid)).unwrap();
        let f = make_knapp(j, grid).unwrap();
        assert!((f.l2_norm() - 1.0).abs() < 1e-12);
        let c = grid.length() / 2.0;
        let (radial, transverse) = (5.0 * 2f64.powi(-(j as i32)), 2.5 * 2f64.powf(-(j as f64) / 2.0));
        let inside = Field::from_fn(grid, |x| {
            let ok = (x[0] - c).abs() <= radial && x[1..].iter().all(|xi| (xi - c).abs() <= transverse);
            Complex64::new(if ok { 1.0 } else { 0.0 }, 0.0)
        });
        let mass: f64 = f
            .samples()
            .iter()
            .zip(inside.samples())
            .map(|(v, w)| v.norm_sqr() * w.re)
            .sum::<f64>()
            * grid.cell_volume();
        assert!(mass >= 0.99, "n {n} j {j}: mass {mass}");
    }
    assert!(make_knapp(5, GridSpec::unit(2, 16).unwrap()).is_err());
}

#[test]
fn bump_generator() {
    let grid = GridSpec::unit(2, 32).unwrap();
    let bump = make_bump(0.5, grid).unwrap();
    assert!((bump.l2_norm() - 1.0).abs() < 1e-12);
    assert!(bump.samples().iter().all(|v| v.re >= 0.0 && v.im == 0.0));
    // zero outside the diameter
    let off = grid.flatten(&[0, 0]);
    assert_eq!(bump.samples()[off].norm(), 0.0);
    assert!(make_bump(2.0, grid).is_err());
}

#[test]
fn regression_helpers() {
    let xs: Vec<f64> = (0..9).map(|i| 0.1 * 10f64.powf(i as f64 / 8.0)).collect();
    let ys: Vec<f64> = xs.iter().map(|x| 3.0 * x.powf(-1.5)).collect();
    let fit = power_law_fit("tau", &xs, &ys, -1.5, 0.25).unwrap();
    assert!((fit.slope + 1.5).abs() < 1e-12 && fit.residual < 1e-12 && fit.passed);
    // fewer than eight points per decade is refused
    let sparse = |v: &[f64]| vec![v[0], v[4], v[8]];
    assert!(power_law_fit("tau", &sparse(&xs), &sparse(&ys), -1.5, 0.25).is_err());

    let ks = [0.0, 1.0, 2.0, 3.0];
    let ys: Vec<f64> = ks.iter().map(|k| 2f64.powf(-4.0 * k)).collect();
    let fit = dyadic_fit("k", &ks, &ys, -4.0, Some(0.4)).unwrap();
    assert!((fit.slope + 4.0).abs() < 1e-12 && fit.passed);
    let fit = dyadic_fit("k", &ks, &ys, -2.0, Some(0.4)).unwrap();
    assert!(!fit.passed);
    let informational = dyadic_fit("k", &ks, &ys, -2.0, None).unwrap();
    assert!(informational.passed);
}

#[test]
fn report_serialization_is_stable() {
    let mut report = CheckReport::new("demo");
    report.param("n", 4.0).param("q", f64::INFINITY);
    report.ratio("series", 1.0, 0.5);
    report.ratio("series", 2.0, 0.75);
    report.compare("growth", 0.9, 1.0);
    let report = report.finish();
    assert!(report.passed);
    assert_eq!(report.max_ratio.0, 0.75);
    let json = serde_json::to_string(&report).unwrap();
    assert!(json.contains("\"q\":\"inf\""));
    assert_eq!(json, serde_json::to_string(&report.clone()).unwrap());
    let csv = reports_csv(&[report]);
    assert!(csv.starts_with("check,series,kind,x,value\n"));
    assert_eq!(csv.lines().count(), 3);

    let mut over = CheckReport::new("over").with_cap(1.0);
    over.ratio("s", 0.0, 1.5);
    assert!(!over.finish().passed);
    let failed = CheckReport::failed("broken", &Error::Precondition("no".into()));
    assert!(!failed.passed && failed.error.is_some());
}

#[test]
fn energy_check() {
    let cutoffs = CutoffFamily::default();
    let grid = GridSpec::unit(3, 16).unwrap();
    let mut corpus = seeded_corpus(grid, &corpus_seeds(0, 6), 7).unwrap();
    corpus.extend(plane_wave_corpus(grid, 3).unwrap());
    let times = [0.0, 0.3, 0.9];
    let report = check_energy(2, 1, &corpus, &times, &cutoffs).unwrap();
    assert!(report.passed, "{report:?}");
    assert!(report.max_ratio.0 <= 1.0 + 1e-10);
    assert!(matches!(check_energy(1, 2, &corpus, &times, &cutoffs), Err(Error::Precondition(_))));
}

#[test]
fn reverse_holder_and_young() {
    let cutoffs = CutoffFamily::default();
    let grid = GridSpec::unit(2, 32).unwrap();
    let mut corpus = seeded_corpus(grid, &corpus_seeds(0, 6), 7).unwrap();
    corpus.extend(spike_corpus(grid).unwrap());
    let smooth = seeded_field(grid, 5, 1).unwrap();
    let scan: Vec<i32> = (2..=5).collect();
    for a in [1.0, 2.0, f64::INFINITY] {
        let report = check_reverse_holder(a, 1, &[1, 2, 3, 4, 5], &corpus, &smooth, &scan, &cutoffs).unwrap();
        assert!(report.passed, "a = {a}: {:?}", report.slopes);
    }
    assert!(check_reverse_holder(1.0, 3, &[1], &corpus, &smooth, &scan, &cutoffs).is_err());

    let spikes = spike_corpus(grid).unwrap();
    let spread = seeded_corpus(grid, &corpus_seeds(0, 6), 6).unwrap();
    let ks: Vec<i32> = (0..=5).collect();
    for (a, b, p) in [(1.0, f64::INFINITY, 1.0), (2.0, 2.0, 2.0), (1.0, 2.0, 2.0)] {
        let report = check_young(a, b, p, &ks, &spikes, &spread, &scan, &cutoffs).unwrap();
        assert!(report.passed, "({a}, {b}, {p}): {:?} {:?}", report.slopes, report.comparisons);
    }
    assert!(check_young(2.0, 1.0, 1.0, &ks, &spikes, &spread, &scan, &cutoffs).is_err());
}

#[test]
fn decay_preconditions() {
    let cutoffs = CutoffFamily::default();
    let grid = GridSpec::unit(2, 64).unwrap();
    let mut setup = DecaySetup::new(3, 2);
    setup.t_range = (0.1, 0.5);
    assert!(check_decay(grid, &setup, &cutoffs).is_err());
    let setup = DecaySetup::new(2, 3);
    assert!(check_asymmetric_decay(grid, &setup, &cutoffs).is_err());
    let mut setup = DecaySetup::new(3, 1);
    setup.per_decade = 4;
    assert!(check_decay(grid, &setup, &cutoffs).is_err());
}

#[test]
fn decay_in_two_dimensions() {
    // n = 2: the dispersive slope is -1/2
    let cutoffs = CutoffFamily::default();
    let grid = GridSpec::unit(2, 256).unwrap();
    let mut setup = DecaySetup::new(6, 3);
    setup.scan_js = vec![5, 6, 7];
    setup.scan_ks = vec![3, 4];
    setup.k_scan_j = 7;
    let report = check_decay(grid, &setup, &cutoffs).unwrap();
    let tau = report.slopes.iter().find(|s| s.series == "tau").unwrap();
    assert!((tau.target + 0.5).abs() < 1e-15);
    assert!(tau.passed, "{:?}", report.slopes);
}

#[test]
fn strichartz_checks() {
    let cutoffs = CutoffFamily::default();
    let grid = GridSpec::unit(4, 8).unwrap();
    let corpus = seeded_corpus(grid, &corpus_seeds(0, 4), 3).unwrap();
    let q = 18.0;
    let setup = StrichartzSetup { q, r: admissible_r(4, q), scales: vec![(1, 1)], end: 1.0, steps: 8 };
    let report = check_one_sided_strichartz(&setup, &corpus, &cutoffs).unwrap();
    assert!(report.passed && report.max_ratio.0 <= DEFAULT_RATIO_CAP);
    let energy = StrichartzSetup { q: f64::INFINITY, r: 2.0, ..setup.clone() };
    let report = check_one_sided_strichartz(&energy, &corpus, &cutoffs).unwrap();
    assert!(report.passed && report.max_ratio.0 <= 1.0 + 1e-10);
    let bad = StrichartzSetup { r: 3.0, ..setup.clone() };
    assert!(matches!(check_one_sided_strichartz(&bad, &corpus, &cutoffs), Err(Error::InvalidExponent(_))));
    let endpoint = StrichartzSetup { q: 2.0, r: 6.0, ..setup };
    assert!(check_one_sided_strichartz(&endpoint, &corpus, &cutoffs).is_err());

    assert_eq!(alpha_regime(1, 2), "j<=k");
    assert_eq!(alpha_regime(3, 2), "k<=j<=2k");
    assert_eq!(alpha_regime(4, 2), "j>=2k");
}

#[test]
fn two_sided_check() {
    let cutoffs = CutoffFamily::default();
    let grid = GridSpec::unit(4, 8).unwrap();
    let f = seeded_field(grid, 1, 3).unwrap();
    let h = seeded_field(grid, 2, 3).unwrap();
    let forcing = SpaceTimeField::sample(0.0, 1.0, 8, |t| Ok(h.scale(Complex64::new(t.cos(), 0.0)))).unwrap();
    let zero = forcing.map_frames(|g| Ok(g.scale(Complex64::default()))).unwrap();
    let q = 18.0;
    let setup = TwoSidedSetup { q, r: admissible_r(4, q), js: vec![1, 2, 3], k: 2 };
    let cases = vec![
        (CauchyData::position(f.clone()), zero),
        (CauchyData::new(f.clone(), h.clone()).unwrap(), forcing),
    ];
    let report = check_two_sided(&setup, &cases, &cutoffs).unwrap();
    assert!(report.passed, "max {}", report.max_ratio.0);
    // the top regime needs j >= 4, beyond this grid
    for regime in ["j<=k", "k<=j<=2k"] {
        assert!(report.samples.iter().any(|s| s.series == regime), "{regime}");
    }
}

#[test]
fn nonlinear_difference_estimate() {
    let cutoffs = CutoffFamily::default();
    let grid = GridSpec::unit(4, 8).unwrap();
    let params = ProblemParams::new(4, 0.1, 1.86).unwrap();
    let wave = |seed| free_solution_frames(&CauchyData::position(seeded_field(grid, seed, 3).unwrap()), 1.0, 8).unwrap();
    let (u, v) = (wave(1), wave(2));
    let (lhs, _) = uv_sides(&params, 1, &u, &u, &cutoffs).unwrap();
    assert_eq!(lhs, 0.0);
    let zero = u.map_frames(|f| Ok(f.scale(Complex64::default()))).unwrap();
    let report = check_nonlinear_uv(&params, 1, &[(u.clone(), zero), (u, v)], &[1.0, 0.5, 0.25], &cutoffs).unwrap();
    assert!(report.passed, "{:?}", report.comparisons);
    assert!(check_nonlinear_uv(&params, 1, &[], &[1.0], &cutoffs).is_err());
    let outside = ProblemParams::new(4, 0.1, 2.5).unwrap();
    assert!(matches!(check_nonlinear_uv(&outside, 1, &[(wave(3), wave(4))], &[1.0], &cutoffs), Err(Error::ExponentWindow(_))));
}

#[test]
fn suite_names() {
    assert_eq!(resolve_suites(&["all".into()]).unwrap(), SUITES.to_vec());
    assert_eq!(resolve_suites(&["young".into(), "energy".into(), "young".into()]).unwrap(), vec!["young", "energy"]);
    assert!(matches!(resolve_suites(&["bogus".into()]), Err(Error::UnknownSuite(_))));
    assert!(matches!(run_suite("bogus", &SuiteConfig::default()), Err(Error::UnknownSuite(_))));
}

#[test]
fn energy_suite_is_deterministic() {
    let config = SuiteConfig { points: 8, corpus: 4, ..SuiteConfig::default() };
    let a = run_suite("energy", &config).unwrap();
    let b = run_suite("energy", &config).unwrap();
    assert!(a.iter().all(|r| r.passed));
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    let other = run_suite("energy", &SuiteConfig { seed: 1, ..config }).unwrap();
    assert_ne!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&other).unwrap());
    assert!(lebesgue_norm(&seeded_field(GridSpec::unit(4, 8).unwrap(), 1, 3).unwrap(), 2.0).is_ok());
}
