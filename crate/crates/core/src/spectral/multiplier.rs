use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use super::field::{Field, Representation};

/// A real radial symbol `s -> m(s)`, identically zero outside `[lo, hi]`.
#[derive(Clone)]
pub struct RadialProfile {
    eval: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    lo: f64,
    hi: f64,
}

impl RadialProfile {
    pub fn new(lo: f64, hi: f64, eval: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self { eval: Arc::new(eval), lo, hi }
    }

    pub fn support(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    pub fn eval(&self, s: f64) -> f64 {
        if s < self.lo || s > self.hi {
            0.0
        } else {
            (self.eval)(s)
        }
    }

    /// Pointwise product; the support is the intersection.
    pub fn product(&self, other: &RadialProfile) -> RadialProfile {
        let (a, b) = (self.clone(), other.clone());
        RadialProfile::new(self.lo.max(other.lo), self.hi.min(other.hi), move |s| a.eval(s) * b.eval(s))
    }
}

impl fmt::Debug for RadialProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RadialProfile").field("lo", &self.lo).field("hi", &self.hi).finish()
    }
}

/// Multiplies the frequency samples by `m(|xi|)`. The result is in frequency representation.
pub fn apply_radial_multiplier(field: &Field, profile: &RadialProfile) -> Field {
    apply_radial_symbol(field, |s| Complex64::new(profile.eval(s), 0.0))
}

/// Multiplies the frequency samples by a complex radial symbol. The result is in frequency representation.
pub fn apply_radial_symbol(field: &Field, symbol: impl Fn(f64) -> Complex64) -> Field {
    let mut out = field.to(Representation::Frequency);
    let radii = out.grid().radii();
    for (v, s) in out.data_mut().iter_mut().zip(radii) {
        *v *= symbol(s);
    }
    out
}
