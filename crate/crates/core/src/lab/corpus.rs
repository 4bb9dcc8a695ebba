//! Test-field generators: seeded trigonometric polynomials, spikes, plane waves, Knapp packets and bumps.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::propagator::CauchyData;
use crate::spectral::{Field, GridSpec, Representation};

/// Base seeds of the deterministic corpora; a run seed is added to each.
pub const CORPUS_SEEDS: [u64; 20] = [
    11, 23, 37, 41, 53, 67, 79, 83, 97, 101, 113, 127, 131, 149, 157, 163, 179, 191, 199, 211,
];

pub fn corpus_seeds(run_seed: u64, count: usize) -> Vec<u64> {
    (0..count).map(|i| CORPUS_SEEDS[i % CORPUS_SEEDS.len()].wrapping_add(run_seed).wrapping_add((i / CORPUS_SEEDS.len()) as u64 * 1009)).collect()
}

fn normalized(field: Field) -> Result<Field> {
    let norm = field.l2_norm();
    if norm == 0.0 {
        return Err(Error::Precondition("generated field vanishes".into()));
    }
    Ok(field.scale(Complex64::new(1.0 / norm, 0.0)))
}

/// Flat frequency index of an integer mode vector.
fn mode_offset(grid: &GridSpec, modes: &[i64]) -> usize {
    let n = grid.points() as i64;
    modes.iter().fold(0, |acc, &m| acc * grid.points() + m.rem_euclid(n) as usize)
}

/// Visits every mode vector in `[-m_max, m_max]^n` in lexicographic order.
fn for_each_mode(dim: usize, m_max: i64, mut visit: impl FnMut(&[i64])) {
    let mut m = vec![-m_max; dim];
    loop {
        visit(&m);
        let mut d = dim;
        loop {
            if d == 0 {
                return;
            }
            d -= 1;
            m[d] += 1;
            if m[d] <= m_max {
                break;
            }
            m[d] = -m_max;
        }
    }
}

/// A random trigonometric polynomial with Gaussian coefficients on `|m|_inf <= m_max`, unit in `L^2`.
///
/// Coefficients are drawn in a fixed mode order, so one seed gives the same continuous field on
/// every grid that resolves `m_max`. Returned in physical representation.
pub fn seeded_field(grid: GridSpec, seed: u64, m_max: i64) -> Result<Field> {
    if m_max < 0 || m_max >= grid.points() as i64 / 2 {
        return Err(Error::Precondition(format!(
            "mode bound {m_max} is not resolved by {} points per axis",
            grid.points()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut data = vec![Complex64::default(); grid.total_points()];
    for_each_mode(grid.dim() as usize, m_max, |m| {
        let re: f64 = StandardNormal.sample(&mut rng);
        let im: f64 = StandardNormal.sample(&mut rng);
        data[mode_offset(&grid, m)] = Complex64::new(re, im);
    });
    normalized(Field::new(grid, Representation::Frequency, data)?.into_physical())
}

pub fn seeded_corpus(grid: GridSpec, seeds: &[u64], m_max: i64) -> Result<Vec<Field>> {
    seeds.iter().map(|&s| seeded_field(grid, s, m_max)).collect()
}

/// A single-cell spike at a multi-index, unit in `L^2`.
pub fn spike(grid: GridSpec, at: &[usize]) -> Result<Field> {
    if at.len() != grid.dim() as usize || at.iter().any(|&i| i >= grid.points()) {
        return Err(Error::InvalidGrid(format!("spike position {at:?} is off the grid")));
    }
    let mut data = vec![Complex64::default(); grid.total_points()];
    data[grid.flatten(at)] = Complex64::new(1.0, 0.0);
    normalized(Field::new(grid, Representation::Physical, data)?)
}

/// Spikes at the origin, the torus centre and a few off-lattice-centre cells.
pub fn spike_corpus(grid: GridSpec) -> Result<Vec<Field>> {
    let n = grid.points();
    let d = grid.dim() as usize;
    let positions = [vec![0; d], vec![n / 2; d], (0..d).map(|i| (3 + 5 * i) % n).collect(), vec![n - 1; d]];
    positions.iter().map(|p| spike(grid, p)).collect()
}

/// Plane waves along each axis and the diagonal at mode `m`.
pub fn plane_wave_corpus(grid: GridSpec, m: i64) -> Result<Vec<Field>> {
    let d = grid.dim() as usize;
    let mut out = Vec::with_capacity(d + 1);
    for axis in 0..d {
        let mut modes = vec![0; d];
        modes[axis] = m;
        out.push(normalized(Field::plane_wave(grid, &modes, Complex64::new(1.0, 0.0))?)?);
    }
    out.push(normalized(Field::plane_wave(grid, &vec![m; d], Complex64::new(1.0, 0.0))?)?);
    Ok(out)
}

/// Frequency widths of the Knapp packet at scale `j`: radial `2^j / 2`, transverse `2^{j/2}`.
pub fn knapp_widths(j: u32) -> (f64, f64) {
    (2f64.powi(j as i32) / 2.0, 2f64.powf(j as f64 / 2.0))
}

/// Whether the Knapp cap at scale `j` fits the grid's band and frequency spacing.
pub fn knapp_resolvable(j: u32, grid: &GridSpec) -> bool {
    let (radial, transverse) = knapp_widths(j);
    let centre = 2f64.powi(j as i32 + 2);
    centre + 4.0 * radial <= grid.nyquist() && transverse >= 2.0 * std::f64::consts::PI / grid.length()
}

/// A Knapp wave packet: Gaussian cap centred at `2^{j+2} e_1` with radial width `~2^j` and
/// angular width `~2^{-j/2}`, unit in `L^2`, spatially centred on the torus.
pub fn make_knapp(j: u32, grid: GridSpec) -> Result<Field> {
    if !knapp_resolvable(j, &grid) {
        return Err(Error::Precondition(format!(
            "Knapp cap at scale {j} is not resolved by N = {}, L = {}",
            grid.points(),
            grid.length()
        )));
    }
    let (radial, transverse) = knapp_widths(j);
    let centre = 2f64.powi(j as i32 + 2);
    let shift = grid.length() / 2.0;
    let d = grid.dim() as usize;
    let mut data = vec![Complex64::default(); grid.total_points()];
    for (flat, slot) in data.iter_mut().enumerate() {
        let idx = grid.unflatten(flat);
        let mut exponent = 0.0;
        let mut phase = 0.0;
        for (axis, &i) in idx.iter().enumerate().take(d) {
            let xi = grid.wavenumber(i);
            let (offset, width) = if axis == 0 { (xi - centre, radial) } else { (xi, transverse) };
            exponent += offset * offset / (2.0 * width * width);
            phase -= xi * shift;
        }
        *slot = Complex64::from_polar((-exponent).exp(), phase);
    }
    normalized(Field::new(grid, Representation::Frequency, data)?.into_physical())
}

/// A smooth compactly supported radial bump of diameter `scale` at the torus centre, unit in `L^2`.
pub fn make_bump(scale: f64, grid: GridSpec) -> Result<Field> {
    if !(scale > 0.0 && scale <= grid.length()) {
        return Err(Error::Precondition(format!("bump diameter {scale} does not fit a torus of side {}", grid.length())));
    }
    let c = grid.length() / 2.0;
    let radius = scale / 2.0;
    let field = Field::from_fn(grid, |x| {
        let rho2 = x.iter().map(|xi| (xi - c).powi(2)).sum::<f64>() / (radius * radius);
        let v = if rho2 < 1.0 { (-1.0 / (1.0 - rho2)).exp() } else { 0.0 };
        Complex64::new(v, 0.0)
    });
    normalized(field)
}

/// Position data `f` with a Gaussian spectrum cut off at half the Nyquist band, scaled to
/// `||f||_{H^gamma} = amplitude`, together with `g = 0`.
pub fn gaussian_data(grid: GridSpec, gamma: f64, amplitude: f64) -> Result<CauchyData> {
    let quarter = grid.points() as i64 / 4;
    let width = grid.nyquist() / 4.0;
    let centre = grid.length() / 2.0;
    let mut data = vec![Complex64::default(); grid.total_points()];
    for (flat, slot) in data.iter_mut().enumerate() {
        let idx = grid.unflatten(flat);
        if idx.iter().any(|&i| grid.mode_index(i).abs() >= quarter) {
            continue;
        }
        let r2: f64 = idx.iter().map(|&i| grid.wavenumber(i).powi(2)).sum();
        let phase: f64 = -idx.iter().map(|&i| grid.wavenumber(i) * centre).sum::<f64>();
        *slot = Complex64::from_polar((-r2 / (2.0 * width * width)).exp(), phase);
    }
    let f = Field::new(grid, Representation::Frequency, data)?;
    let norm = crate::norms::sobolev_norm(&f, gamma);
    let f = f.scale(Complex64::new(amplitude / norm, 0.0)).into_physical();
    let g = Field::zeros(grid, Representation::Physical);
    CauchyData::new(f, g)
}
