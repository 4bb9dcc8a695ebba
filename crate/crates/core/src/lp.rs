//! Littlewood-Paley cutoffs, the projections `S_j`, `P_0` and frequency-localized evolutions.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectral::{apply_radial_multiplier, apply_radial_symbol, Field, GridSpec, RadialProfile};

/// `exp(-1/x)` for `x > 0`, zero otherwise.
fn mollifier_tail(x: f64) -> f64 {
    if x > 0.0 {
        (-1.0 / x).exp()
    } else {
        0.0
    }
}

/// Smooth monotone step: 1 for `x <= 0`, 0 for `x >= 1`, C-infinity in between.
pub fn smooth_step_down(x: f64) -> f64 {
    let a = mollifier_tail(1.0 - x);
    let b = mollifier_tail(x);
    a / (a + b)
}

/// The standard low-pass symbol: 1 on `[0, 4]`, 0 on `[8, inf)`.
pub fn standard_phi() -> RadialProfile {
    RadialProfile::new(0.0, 8.0, |s| {
        if s <= 4.0 {
            1.0
        } else {
            smooth_step_down((s - 4.0) / 4.0)
        }
    })
}

/// One low-pass symbol `phi` and the annular pieces it induces by telescoping.
///
/// `beta_j(s) = phi(2^-j s) - phi(2^{1-j} s)`, so `phi + beta_1 + ... + beta_J = phi(2^-J .)`
/// holds identically and the partition of unity on a grid is exact once `2^J` outruns the
/// largest wavenumber.
#[derive(Debug, Clone)]
pub struct CutoffFamily {
    phi: RadialProfile,
}

impl Default for CutoffFamily {
    fn default() -> Self {
        Self { phi: standard_phi() }
    }
}

impl CutoffFamily {
    /// Uses a custom low-pass symbol; it must equal 1 on `[0, 4]` and vanish from 8 on.
    pub fn with_phi(phi: RadialProfile) -> Result<Self> {
        let (lo, hi) = phi.support();
        let plateau_ok = (0..=64).all(|i| (phi.eval(4.0 * i as f64 / 64.0) - 1.0).abs() < 1e-15);
        if lo > 0.0 || hi > 8.0 || !plateau_ok {
            return Err(Error::Precondition(
                "low-pass symbol must be 1 on [0, 4] and supported in [0, 8]".into(),
            ));
        }
        Ok(Self { phi })
    }

    pub fn phi(&self) -> &RadialProfile {
        &self.phi
    }

    /// `phi(2^-j s)`, the symbol of `P_0 + S_1 + ... + S_j`.
    pub fn phi_scaled(&self, j: u32) -> RadialProfile {
        let phi = self.phi.clone();
        let c = 2f64.powi(j as i32);
        RadialProfile::new(0.0, 8.0 * c, move |s| phi.eval(s / c))
    }

    /// The annular symbol at scale `j >= 1`, supported on `[2^{j+1}, 2^{j+3}]`.
    pub fn beta(&self, j: u32) -> RadialProfile {
        assert!(j >= 1, "annular pieces start at j = 1");
        let phi = self.phi.clone();
        let outer = 2f64.powi(j as i32);
        let inner = outer / 2.0;
        RadialProfile::new(4.0 * inner, 8.0 * outer, move |s| phi.eval(s / outer) - phi.eval(s / inner))
    }

    /// Smallest `J` with `phi(2^-J .) = 1` at every wavenumber of the grid.
    pub fn j_max(&self, grid: &GridSpec) -> u32 {
        let top = grid.max_radius();
        let mut j = 0;
        while 4.0 * 2f64.powi(j as i32) < top {
            j += 1;
        }
        j.max(1)
    }

    pub(crate) fn check_scale(&self, grid: &GridSpec, j: u32) -> Result<()> {
        let max = self.j_max(grid);
        if j == 0 || j > max {
            return Err(Error::ScaleOutOfRange { j, max });
        }
        Ok(())
    }
}

/// `S_j f`: the annular projection at scale `j`. Returned in frequency representation.
pub fn project_lp(field: &Field, j: u32, cutoffs: &CutoffFamily) -> Result<Field> {
    cutoffs.check_scale(field.grid(), j)?;
    Ok(apply_radial_multiplier(field, &cutoffs.beta(j)))
}

/// `P_0 f = phi(|D|) f`. Returned in frequency representation.
pub fn project_low(field: &Field, cutoffs: &CutoffFamily) -> Field {
    apply_radial_multiplier(field, cutoffs.phi())
}

/// `U_j^{sign}(t) f`: multiplier `beta_j(|xi|) exp(sign i t |xi|)`. Returned in frequency representation.
pub fn localized_evolution(field: &Field, j: u32, t: f64, sign: Sign, cutoffs: &CutoffFamily) -> Result<Field> {
    cutoffs.check_scale(field.grid(), j)?;
    let beta = cutoffs.beta(j);
    let s = sign.value() * t;
    Ok(apply_radial_symbol(field, |r| Complex64::from_polar(beta.eval(r), s * r)))
}

/// Direction of a half-wave evolution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_plateau_and_support() {
        let phi = standard_phi();
        assert_eq!(phi.eval(0.0), 1.0);
        assert_eq!(phi.eval(4.0), 1.0);
        assert_eq!(phi.eval(8.0), 0.0);
        assert_eq!(phi.eval(9.0), 0.0);
        assert!((phi.eval(6.0) - 0.5).abs() < 1e-15);
        let mut prev = 1.0;
        for i in 0..=400 {
            let v = phi.eval(4.0 + 4.0 * i as f64 / 400.0);
            assert!(v <= prev + 1e-15);
            prev = v;
        }
    }

    #[test]
    fn beta_is_a_nonnegative_annular_bump() {
        let c = CutoffFamily::default();
        for j in 1..6 {
            let b = c.beta(j);
            let (lo, hi) = b.support();
            assert_eq!(lo, 2f64.powi(j as i32 + 1));
            assert_eq!(hi, 2f64.powi(j as i32 + 3));
            assert_eq!(b.eval(2f64.powi(j as i32 + 2)), 1.0);
            for i in 0..=1000 {
                let s = hi * 1.2 * i as f64 / 1000.0;
                assert!(b.eval(s) >= 0.0);
                if s < lo || s > hi {
                    assert_eq!(b.eval(s), 0.0);
                }
            }
        }
    }

    #[test]
    fn telescoping_identity_holds_pointwise() {
        let c = CutoffFamily::default();
        for jj in 1..7 {
            let top = c.phi_scaled(jj);
            for i in 0..=2000 {
                let s = 600.0 * i as f64 / 2000.0;
                let sum: f64 = c.phi().eval(s) + (1..=jj).map(|j| c.beta(j).eval(s)).sum::<f64>();
                assert!((sum - top.eval(s)).abs() < 1e-15, "J={jj} s={s}");
            }
        }
    }

    #[test]
    fn j_max_reaches_grid_corner() {
        let c = CutoffFamily::default();
        let g = GridSpec::unit(4, 16).unwrap();
        let j = c.j_max(&g);
        assert!(4.0 * 2f64.powi(j as i32) >= g.max_radius());
        assert!(4.0 * 2f64.powi(j as i32 - 1) < g.max_radius());
    }
}
