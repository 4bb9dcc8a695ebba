use num_complex::Complex64;

use super::tiling::DyadicTiling;
use crate::error::{Error, Result};
use crate::spectral::{Field, Representation};

pub(crate) fn check_exponent(e: f64) -> Result<()> {
    if e >= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidExponent(format!("exponent {e} is not in [1, inf]")))
    }
}

/// `sum |v|^p` (or the max when `p` is infinite) over a slice, with the weight left to the caller.
fn power_sum(values: impl Iterator<Item = Complex64>, p: f64) -> f64 {
    if p.is_infinite() {
        values.map(|v| v.norm()).fold(0.0, f64::max)
    } else if p == 2.0 {
        values.map(|v| v.norm_sqr()).sum()
    } else if p == 1.0 {
        values.map(|v| v.norm()).sum()
    } else {
        values.map(|v| v.norm().powf(p)).sum()
    }
}

fn finish(sum: f64, weight: f64, p: f64) -> f64 {
    if p.is_infinite() {
        sum
    } else {
        (weight * sum).powf(1.0 / p)
    }
}

/// `l^r` combination of nonnegative numbers.
pub(crate) fn lr_combine(values: &[f64], r: f64) -> f64 {
    if r.is_infinite() {
        values.iter().copied().fold(0.0, f64::max)
    } else if r == 2.0 {
        values.iter().map(|v| v * v).sum::<f64>().sqrt()
    } else {
        values.iter().map(|v| v.powf(r)).sum::<f64>().powf(1.0 / r)
    }
}

fn physical(field: &Field) -> std::borrow::Cow<'_, Field> {
    match field.representation() {
        Representation::Physical => std::borrow::Cow::Borrowed(field),
        Representation::Frequency => std::borrow::Cow::Owned(field.to(Representation::Physical)),
    }
}

/// Cell-weighted discrete `L^r` norm; `r = inf` is the largest sample modulus.
pub fn lebesgue_norm(field: &Field, r: f64) -> Result<f64> {
    check_exponent(r)?;
    let f = physical(field);
    Ok(finish(power_sum(f.samples().iter().copied(), r), f.grid().cell_volume(), r))
}

/// `L^p` norm of the field on every cube of the tiling, in cube order.
pub fn cube_norms(field: &Field, p: f64, tiling: &DyadicTiling) -> Result<Vec<f64>> {
    check_exponent(p)?;
    if field.grid() != tiling.grid() {
        return Err(Error::GridMismatch);
    }
    let f = physical(field);
    let data = f.samples();
    let mut acc = vec![0.0f64; tiling.cube_count()];
    if p.is_infinite() {
        tiling.for_each_cell(|i, q| acc[q] = acc[q].max(data[i].norm()));
    } else if p == 2.0 {
        tiling.for_each_cell(|i, q| acc[q] += data[i].norm_sqr());
    } else if p == 1.0 {
        tiling.for_each_cell(|i, q| acc[q] += data[i].norm());
    } else {
        tiling.for_each_cell(|i, q| acc[q] += data[i].norm().powf(p));
    }
    let w = f.grid().cell_volume();
    Ok(acc.into_iter().map(|s| finish(s, w, p)).collect())
}

/// The two-scale norm `(sum_Q ||f||_{L^p(Q)}^r)^{1/r}` over the cubes of one dyadic tiling.
pub fn x_norm(field: &Field, r: f64, p: f64, tiling: &DyadicTiling) -> Result<f64> {
    check_exponent(r)?;
    Ok(lr_combine(&cube_norms(field, p, tiling)?, r))
}

/// Inhomogeneous Sobolev norm with weight `(1 + |xi|)^gamma`.
pub fn sobolev_norm(field: &Field, gamma: f64) -> f64 {
    let f = field.to(Representation::Frequency);
    let radii = f.grid().radii();
    let sum: f64 = if gamma == 0.0 {
        f.samples().iter().map(|v| v.norm_sqr()).sum()
    } else {
        f.samples().iter().zip(radii).map(|(v, s)| (1.0 + s).powf(2.0 * gamma) * v.norm_sqr()).sum()
    };
    (f.grid().cell_volume() * sum).sqrt()
}
