//! Exponent arithmetic: admissible pairs, the scale-coupling weight `alpha(j, k)`,
//! solver exponents, well-posedness conditions and the `(gamma, p)` region atlas.

mod map;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub use map::{region_csv, region_svg, RegionGrid};

/// Tolerance on condition margins when deciding equality.
pub const EQUALITY_TOL: f64 = 1e-12;
/// Tolerance in `(gamma, p)` when matching the excluded endpoint of the new region.
pub const ENDPOINT_TOL: f64 = 1e-9;

/// Writes infinities as the strings `"inf"`/`"-inf"` so JSON stays lossless.
pub(crate) fn serialize_extended<S: Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if v.is_finite() {
        s.serialize_f64(*v)
    } else if v.is_nan() {
        s.serialize_str("nan")
    } else if *v > 0.0 {
        s.serialize_str("inf")
    } else {
        s.serialize_str("-inf")
    }
}

/// Critical exponents that depend on the dimension only.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CriticalExponents {
    /// Sobolev index of the simultaneous endpoint, `(n-3)/(2(n-1))`.
    pub gamma0: f64,
    /// Endpoint Strichartz exponent `2(n-1)/(n-3)`.
    #[serde(serialize_with = "serialize_extended")]
    pub r0: f64,
    /// Its dual `2(n-1)/(n+1)`.
    pub r0_dual: f64,
    /// Power at the simultaneous endpoint, `(n+1)^2/((n-1)^2+4)`.
    pub p0: f64,
}

impl CriticalExponents {
    pub fn new(n: u32) -> Self {
        let n = n as f64;
        Self {
            gamma0: (n - 3.0) / (2.0 * (n - 1.0)),
            r0: if n > 3.0 { 2.0 * (n - 1.0) / (n - 3.0) } else { f64::INFINITY },
            r0_dual: 2.0 * (n - 1.0) / (n + 1.0),
            p0: (n + 1.0).powi(2) / ((n - 1.0).powi(2) + 4.0),
        }
    }
}

/// A problem instance `(n, gamma, p)` with its derived exponents.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProblemParams {
    pub n: u32,
    pub gamma: f64,
    pub p: f64,
    #[serde(flatten)]
    pub critical: CriticalExponents,
    /// Spatial exponent `p r0'` used by the iteration norm.
    pub r: f64,
    /// Temporal exponent pairing with `r`; `None` when the pair is not admissible.
    #[serde(serialize_with = "serialize_optional_extended")]
    pub q: Option<f64>,
}

fn serialize_optional_extended<S: Serializer>(v: &Option<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(x) => serialize_extended(x, s),
        None => s.serialize_none(),
    }
}

impl ProblemParams {
    pub fn new(n: u32, gamma: f64, p: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::Precondition(format!("dimension must be at least 2, got {n}")));
        }
        if !(gamma >= 0.0 && gamma.is_finite()) {
            return Err(Error::Precondition(format!("gamma must be a finite nonnegative number, got {gamma}")));
        }
        if !(p > 1.0 && p.is_finite()) {
            return Err(Error::Precondition(format!("p must exceed 1, got {p}")));
        }
        let critical = CriticalExponents::new(n);
        let q = derived_exponents(n, p).ok().map(|(_, q)| q);
        Ok(Self { n, gamma, p, critical, r: p * critical.r0_dual, q })
    }

    /// `(r, q)` for the iteration norm, or the violated bound.
    pub fn solver_exponents(&self) -> Result<(f64, f64)> {
        derived_exponents(self.n, self.p)
    }
}

/// Whether `(q, r)` lies on the sharp admissible line `1/q + (n-1)/(2r) = (n-1)/4` with `2 <= q, r <= inf`.
pub fn is_sharp_admissible(q: f64, r: f64, n: u32) -> bool {
    if n <= 3 || !(q >= 2.0 && r >= 2.0) {
        return false;
    }
    let nf = n as f64;
    (1.0 / q + (nf - 1.0) / (2.0 * r) - (nf - 1.0) / 4.0).abs() <= EQUALITY_TOL
}

/// The scale-coupling weight: `2nk/(n-1) - (n+1)j/(n-1)` for `j <= k`, `2k - j` up to `j = 2k`, then 0.
pub fn alpha(j: i64, k: i64, n: u32) -> Result<f64> {
    if j < 0 || k < 0 {
        return Err(Error::Precondition(format!("alpha needs nonnegative scales, got j = {j}, k = {k}")));
    }
    if n < 2 {
        return Err(Error::Precondition(format!("alpha needs n >= 2, got {n}")));
    }
    let (jf, kf, nf) = (j as f64, k as f64, n as f64);
    Ok(if j <= k {
        (2.0 * nf * kf - (nf + 1.0) * jf) / (nf - 1.0)
    } else if j <= 2 * k {
        (2 * k - j) as f64
    } else {
        0.0
    })
}

/// `r = p r0'` and the admissible `q`, or the bound that fails.
///
/// Admissibility needs `p >= (n+1)/(n-1)` (so `r >= 2`) and `r <= r0`; the pair is further
/// required to satisfy `q >= 2p`, i.e. `p <= (n+3)/(n-1)`.
pub fn derived_exponents(n: u32, p: f64) -> Result<(f64, f64)> {
    if n <= 3 {
        return Err(Error::ExponentWindow(format!("solver exponents need n > 3, got {n}")));
    }
    let nf = n as f64;
    let crit = CriticalExponents::new(n);
    let r = p * crit.r0_dual;
    let lower = (nf + 1.0) / (nf - 1.0);
    if p < lower - EQUALITY_TOL {
        return Err(Error::ExponentWindow(format!("p = {p} violates p >= (n+1)/(n-1) = {lower}")));
    }
    let upper = (nf + 3.0) / (nf - 1.0);
    if p > upper + EQUALITY_TOL {
        return Err(Error::ExponentWindow(format!("p = {p} violates p < (n+3)/(n-1) = {upper}")));
    }
    if let Some(exact) = small_fraction(p) {
        return Ok(exact_exponents(n as i64, exact));
    }
    let inv_q = ((nf - 1.0) * p - (nf + 1.0)) / (4.0 * p);
    let q = if inv_q <= EQUALITY_TOL { f64::INFINITY } else { 1.0 / inv_q };
    Ok((r, q))
}

/// Largest denominator tried when reading `p` as a fraction.
const FRACTION_DENOMINATOR: i64 = 10_000;

/// `x` as `a/b` with a small denominator when `x` is the double nearest to such a fraction.
fn small_fraction(x: f64) -> Option<Ratio<i64>> {
    let (mut h0, mut h1, mut k0, mut k1) = (0i64, 1i64, 1i64, 0i64);
    let mut rest = x;
    for _ in 0..24 {
        let a = rest.floor();
        if a.abs() > 1e9 {
            return None;
        }
        let a = a as i64;
        (h0, h1) = (h1, a.checked_mul(h1)?.checked_add(h0)?);
        (k0, k1) = (k1, a.checked_mul(k1)?.checked_add(k0)?);
        if k1 > FRACTION_DENOMINATOR {
            return None;
        }
        if (h1 as f64 / k1 as f64 - x).abs() <= 2.0 * f64::EPSILON * x.abs() {
            return Some(Ratio::new(h1, k1));
        }
        let frac = rest - a as f64;
        if frac == 0.0 {
            return None;
        }
        rest = 1.0 / frac;
    }
    None
}

/// `r = 2(n-1)p/(n+1)` and `1/q = ((n-1)p - (n+1))/(4p)` in exact arithmetic, rounded once.
fn exact_exponents(n: i64, p: Ratio<i64>) -> (f64, f64) {
    let to_f64 = |x: Ratio<i64>| *x.numer() as f64 / *x.denom() as f64;
    let r = p * Ratio::new(2 * (n - 1), n + 1);
    let inv_q = (p * (n - 1) - (n + 1)) / (p * 4);
    let q = if *inv_q.numer() == 0 { f64::INFINITY } else { to_f64(inv_q.recip()) };
    (to_f64(r), q)
}

/// Outcome of one inequality `lhs <= rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConditionStatus {
    Strict,
    Equality,
    Violated,
    NotApplicable,
}

impl ConditionStatus {
    pub fn holds(self) -> bool {
        matches!(self, ConditionStatus::Strict | ConditionStatus::Equality)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Condition {
    pub name: &'static str,
    #[serde(serialize_with = "serialize_extended")]
    pub lhs: f64,
    #[serde(serialize_with = "serialize_extended")]
    pub rhs: f64,
    pub status: ConditionStatus,
}

impl Condition {
    fn compare(name: &'static str, lhs: f64, rhs: f64) -> Self {
        let status = if lhs.is_nan() || rhs.is_nan() {
            ConditionStatus::NotApplicable
        } else if rhs == f64::INFINITY && lhs.is_finite() {
            ConditionStatus::Strict
        } else {
            let scale = 1f64.max(lhs.abs()).max(rhs.abs());
            let margin = rhs - lhs;
            if margin.abs() <= EQUALITY_TOL * scale {
                ConditionStatus::Equality
            } else if margin > 0.0 {
                ConditionStatus::Strict
            } else {
                ConditionStatus::Violated
            }
        };
        Self { name, lhs, rhs, status }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionReport {
    pub scaling: Condition,
    pub concentration: Condition,
    pub ls_cond: Condition,
    pub technical: Condition,
    pub c0: Condition,
    pub c1: Condition,
    pub c2: Condition,
}

impl ConditionReport {
    pub fn all(&self) -> [&Condition; 7] {
        [&self.scaling, &self.concentration, &self.ls_cond, &self.technical, &self.c0, &self.c1, &self.c2]
    }
}

/// Evaluates every condition as `lhs <= rhs`; the iteration conditions need an admissible `q`.
pub fn check_conditions(params: &ProblemParams) -> ConditionReport {
    let n = params.n as f64;
    let (g, p) = (params.gamma, params.p);
    let g0 = params.critical.gamma0;
    let q = params.q.unwrap_or(f64::NAN);
    let c_common = (g0 - g) / p - 2.0 * n / ((n - 1.0) * q);
    ConditionReport {
        scaling: Condition::compare("scaling", p * (n / 2.0 - g), (n + 4.0) / 2.0 - g),
        concentration: Condition::compare("concentration", p * ((n + 1.0) / 4.0 - g), (n + 5.0) / 4.0 - g),
        ls_cond: Condition::compare(
            "ls-cond",
            p * ((n + 1.0) / 4.0 - g),
            (n + 1.0) / (2.0 * n) * ((n + 3.0) / 2.0 - g),
        ),
        technical: Condition::compare("technical", p * (n / 4.0 - g), 0.5 * ((n + 3.0) / 2.0 - g)),
        c0: Condition::compare("c0", 2.0, q / p),
        c1: Condition::compare("c1", 0.0, c_common + g + 1.0 / q),
        c2: Condition::compare("c2", 0.0, c_common + 2.0 * g),
    }
}

/// Where `(n, gamma, p)` falls in the well-posedness atlas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RegionLabel {
    /// Scaling condition fails: ill-posed.
    IllScaling,
    /// Concentration condition fails: ill-posed.
    IllConcentration,
    /// Covered by the classical Strichartz theory (includes its boundary).
    KnownWellPosed,
    /// Covered by the two-scale argument.
    NewWellPosed,
    /// Between the technical condition and the concentration line; unresolved.
    OpenRegionD,
    /// The excluded simultaneous endpoint of the concentration and technical lines.
    EndpointD,
    /// `gamma = 0` on the concentration line.
    EndpointE,
    /// `p <= (n+1)/(n-1)`, handled by the classical theory.
    LowPower,
    OutOfScope,
}

impl RegionLabel {
    pub const ALL: [RegionLabel; 9] = [
        RegionLabel::IllScaling,
        RegionLabel::IllConcentration,
        RegionLabel::KnownWellPosed,
        RegionLabel::NewWellPosed,
        RegionLabel::OpenRegionD,
        RegionLabel::EndpointD,
        RegionLabel::EndpointE,
        RegionLabel::LowPower,
        RegionLabel::OutOfScope,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RegionLabel::IllScaling => "ill-scaling",
            RegionLabel::IllConcentration => "ill-concentration",
            RegionLabel::KnownWellPosed => "known-well-posed",
            RegionLabel::NewWellPosed => "new-well-posed",
            RegionLabel::OpenRegionD => "open-region-d",
            RegionLabel::EndpointD => "endpoint-d",
            RegionLabel::EndpointE => "endpoint-e",
            RegionLabel::LowPower => "low-power",
            RegionLabel::OutOfScope => "out-of-scope",
        }
    }

    /// Labels for which the Picard iteration is expected to close.
    pub fn is_well_posed(self) -> bool {
        matches!(self, RegionLabel::KnownWellPosed | RegionLabel::NewWellPosed | RegionLabel::LowPower)
    }
}

impl std::fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The excluded endpoint: `gamma = (n + 3 - sqrt(n^2 - 2n + 33)) / 8` with `p` on the concentration line.
pub fn endpoint_d(n: u32) -> (f64, f64) {
    let nf = n as f64;
    let gamma = (nf + 3.0 - (nf * nf - 2.0 * nf + 33.0).sqrt()) / 8.0;
    let p = 1.0 + 1.0 / ((nf + 1.0) / 4.0 - gamma);
    (gamma, p)
}

pub fn classify_region(params: &ProblemParams) -> RegionLabel {
    if params.n <= 3 {
        return RegionLabel::OutOfScope;
    }
    let c = check_conditions(params);
    let n = params.n as f64;
    let (g, p) = (params.gamma, params.p);
    if !c.scaling.status.holds() {
        return RegionLabel::IllScaling;
    }
    if !c.concentration.status.holds() {
        return RegionLabel::IllConcentration;
    }
    if p <= (n + 1.0) / (n - 1.0) + EQUALITY_TOL {
        return RegionLabel::LowPower;
    }
    if c.ls_cond.status.holds() {
        return RegionLabel::KnownWellPosed;
    }
    if g > 0.0 && g < params.critical.gamma0 {
        let (gd, pd) = endpoint_d(params.n);
        if (g - gd).abs() <= ENDPOINT_TOL && (p - pd).abs() <= ENDPOINT_TOL {
            return RegionLabel::EndpointD;
        }
        if c.technical.status.holds() {
            return RegionLabel::NewWellPosed;
        }
    }
    if g == 0.0 && c.concentration.status == ConditionStatus::Equality {
        return RegionLabel::EndpointE;
    }
    RegionLabel::OpenRegionD
}

/// The labelled corners of the atlas for dimension `n`, as `(name, gamma, p)`.
pub fn figure_points(n: u32) -> [(&'static str, f64, f64); 5] {
    let nf = n as f64;
    let crit = CriticalExponents::new(n);
    let (gd, pd) = endpoint_d(n);
    [
        ("a", 1.0, (nf + 2.0) / (nf - 2.0)),
        ("b", 0.5, (nf + 3.0) / (nf - 1.0)),
        ("c", crit.gamma0, crit.p0),
        ("d", gd, pd),
        ("e", 0.0, (nf + 5.0) / (nf + 1.0)),
    ]
}
