//! Run and verification reports.

use serde::Serialize;
use std::collections::BTreeMap;

/// Full-precision float formatting for CSV output (17 significant digits).
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

#[derive(Debug, Clone, Serialize)]
pub struct MonitorStats {
    pub first: f64,
    pub last: f64,
    pub min: f64,
    pub max: f64,
    /// `max |monitor(tau) - monitor(0)|` over the trajectory.
    pub drift: f64,
}

impl MonitorStats {
    pub fn from_series(values: impl Iterator<Item = f64>) -> Option<MonitorStats> {
        let mut stats: Option<MonitorStats> = None;
        for v in values {
            match stats.as_mut() {
                None => {
                    stats = Some(MonitorStats {
                        first: v,
                        last: v,
                        min: v,
                        max: v,
                        drift: 0.0,
                    });
                }
                Some(s) => {
                    s.last = v;
                    s.min = s.min.min(v);
                    s.max = s.max.max(v);
                    s.drift = s.drift.max((v - s.first).abs());
                }
            }
        }
        stats
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ToleranceOutcome {
    pub limit: f64,
    pub actual: f64,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub kind: String,
    pub steps: usize,
    pub stored_rows: usize,
    pub wall_time_ms: f64,
    pub monitors: BTreeMap<String, MonitorStats>,
    pub tolerances: BTreeMap<String, ToleranceOutcome>,
    pub pass: bool,
}

/// One verified property. Deterministic for a fixed seed; carries no timing
/// so reports are byte-stable.
#[derive(Debug, Clone, Serialize)]
pub struct PropertyResult {
    pub name: String,
    pub samples: usize,
    pub worst_error: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl PropertyResult {
    pub fn check(name: &str, samples: usize, worst_error: f64, tolerance: f64) -> Self {
        PropertyResult {
            name: name.to_string(),
            samples,
            worst_error,
            tolerance,
            pass: worst_error <= tolerance,
        }
    }

    /// A property that must exceed a floor (documented expected failures of
    /// transport laws): passes when the observed value is at least `floor`.
    pub fn check_at_least(name: &str, samples: usize, observed: f64, floor: f64) -> Self {
        PropertyResult {
            name: name.to_string(),
            samples,
            worst_error: observed,
            tolerance: floor,
            pass: observed >= floor,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub seed: u64,
    pub samples: usize,
    pub properties: Vec<PropertyResult>,
    pub pass: bool,
}

impl VerifyReport {
    pub fn new(suite: &str, seed: u64, samples: usize, properties: Vec<PropertyResult>) -> Self {
        let pass = properties.iter().all(|p| p.pass);
        VerifyReport {
            suite: suite.to_string(),
            seed,
            samples,
            properties,
            pass,
        }
    }
}
