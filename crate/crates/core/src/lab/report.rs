use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::atlas::serialize_extended;

/// Ratios are compared against this cap unless a check states its own.
pub const DEFAULT_RATIO_CAP: f64 = 50.0;
/// Regression residuals (RMS, log10 units) must stay below this.
pub const RESIDUAL_LIMIT: f64 = 0.1;
/// Continuous-variable fits need at least this many samples per decade.
pub const MIN_POINTS_PER_DECADE: f64 = 8.0;

/// A scalar that serializes infinities as strings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Value(#[serde(serialize_with = "serialize_extended")] pub f64);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SampleKind {
    /// Observed `LHS / RHS`, checked against the cap.
    Ratio,
    /// Raw measurement feeding a fit or a comparison.
    Measurement,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Sample {
    pub series: String,
    pub kind: SampleKind,
    /// Scan parameter: time, scale index, corpus index, ...
    pub x: Value,
    pub value: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SlopeFit {
    pub series: String,
    pub slope: f64,
    pub target: f64,
    /// `None` marks an informational fit that does not gate the pass flag.
    pub tolerance: Option<f64>,
    /// RMS residual in log10 units.
    pub residual: f64,
    pub points: usize,
    pub passed: bool,
}

/// `observed <= limit`, for refinement drift, monotonicity and similar side conditions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comparison {
    pub name: String,
    pub observed: Value,
    pub limit: Value,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub parameters: BTreeMap<String, Value>,
    pub ratio_cap: Value,
    pub max_ratio: Value,
    pub samples: Vec<Sample>,
    pub slopes: Vec<SlopeFit>,
    pub comparisons: Vec<Comparison>,
    pub notes: Vec<String>,
    pub error: Option<String>,
    pub passed: bool,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            parameters: BTreeMap::new(),
            ratio_cap: Value(DEFAULT_RATIO_CAP),
            max_ratio: Value(0.0),
            samples: Vec::new(),
            slopes: Vec::new(),
            comparisons: Vec::new(),
            notes: Vec::new(),
            error: None,
            passed: false,
        }
    }

    /// A report for a check that could not run.
    pub fn failed(name: impl Into<String>, error: &crate::Error) -> Self {
        let mut report = Self::new(name);
        report.error = Some(error.to_string());
        report
    }

    pub fn with_cap(mut self, cap: f64) -> Self {
        self.ratio_cap = Value(cap);
        self
    }

    pub fn param(&mut self, key: &str, value: f64) -> &mut Self {
        self.parameters.insert(key.to_string(), Value(value));
        self
    }

    pub fn ratio(&mut self, series: &str, x: f64, value: f64) {
        self.push(series, SampleKind::Ratio, x, value);
    }

    pub fn measurement(&mut self, series: &str, x: f64, value: f64) {
        self.push(series, SampleKind::Measurement, x, value);
    }

    fn push(&mut self, series: &str, kind: SampleKind, x: f64, value: f64) {
        self.samples.push(Sample { series: series.to_string(), kind, x: Value(x), value: Value(value) });
    }

    pub fn compare(&mut self, name: &str, observed: f64, limit: f64) {
        self.comparisons.push(Comparison {
            name: name.to_string(),
            observed: Value(observed),
            limit: Value(limit),
            passed: observed <= limit,
        });
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    /// Computes `max_ratio` and the pass flag from everything recorded so far.
    pub fn finish(mut self) -> Self {
        let ratios = self.samples.iter().filter(|s| s.kind == SampleKind::Ratio).map(|s| s.value.0);
        let max_ratio = ratios.fold(0.0, |acc: f64, v| if v.is_nan() { f64::NAN } else { acc.max(v) });
        self.max_ratio = Value(max_ratio);
        self.passed = self.error.is_none()
            && max_ratio <= self.ratio_cap.0
            && self.slopes.iter().all(|s| s.passed)
            && self.comparisons.iter().all(|c| c.passed);
        self
    }
}

/// One row per sample and per fit: `check,series,kind,x,value`.
pub fn reports_csv(reports: &[CheckReport]) -> String {
    let mut out = String::from("check,series,kind,x,value\n");
    for r in reports {
        for s in &r.samples {
            let kind = match s.kind {
                SampleKind::Ratio => "ratio",
                SampleKind::Measurement => "measurement",
            };
            writeln!(out, "{},{},{},{},{}", r.name, s.series, kind, s.x.0, s.value.0).unwrap();
        }
        for f in &r.slopes {
            writeln!(out, "{},{},slope,{},{}", r.name, f.series, f.target, f.slope).unwrap();
        }
    }
    out
}
