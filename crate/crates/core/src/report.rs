//! Report types for the verification driver. Reports are deterministic
//! given tool version, parameters and seed; the caller injects the
//! timestamp so that byte-stability can be tested.

use crate::weyl::EquivalenceCase;
use serde::Serialize;
use std::collections::BTreeMap;

/// Sweep parameters of one suite run.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SuiteParams {
    pub r_min: usize,
    pub r_max: usize,
    pub pq_min: i64,
    pub pq_max: i64,
    pub tol: f64,
    pub trunc_order: usize,
    pub quad_y: usize,
    pub seed: u64,
}

impl SuiteParams {
    pub fn r_values(&self) -> impl Iterator<Item = usize> {
        self.r_min..=self.r_max
    }

    pub fn pq_values(&self) -> impl Iterator<Item = i64> {
        self.pq_min..=self.pq_max
    }

    pub fn pq_bound(&self) -> i64 {
        self.pq_min.unsigned_abs().max(self.pq_max.unsigned_abs()) as i64
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.r_min < 3 {
            return Err(format!(
                "r range starts at {}, minimum level is 3",
                self.r_min
            ));
        }
        if self.r_max < self.r_min {
            return Err(format!("empty r range {}:{}", self.r_min, self.r_max));
        }
        if self.pq_max < self.pq_min {
            return Err(format!("empty pq range {}:{}", self.pq_min, self.pq_max));
        }
        if !self.tol.is_finite() || self.tol <= 0.0 {
            return Err("tolerance must be positive".into());
        }
        if self.trunc_order > 30 {
            return Err(format!(
                "truncation order {} exceeds the exact-arithmetic cap 30",
                self.trunc_order
            ));
        }
        if self.quad_y < 16 {
            return Err("quad-y must be at least 16".into());
        }
        Ok(())
    }
}

/// Aggregated outcome of one suite.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub params: SuiteParams,
    pub cases: u64,
    pub failures: u64,
    pub worst_residual: f64,
    pub pass: bool,
    /// Suite-specific counters (regime coverage, per-identity residuals, ...).
    pub metrics: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equivalence_cases: Option<Vec<EquivalenceCase>>,
}

impl SuiteReport {
    pub fn new(suite: &str, params: SuiteParams) -> Self {
        SuiteReport {
            suite: suite.to_owned(),
            params,
            cases: 0,
            failures: 0,
            worst_residual: 0.0,
            pass: true,
            metrics: BTreeMap::new(),
            equivalence_cases: None,
        }
    }

    pub fn record(&mut self, ok: bool, residual: f64) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            self.pass = false;
        }
        if residual > self.worst_residual {
            self.worst_residual = residual;
        }
    }

    pub fn merge(&mut self, other: &SuiteReport) {
        self.cases += other.cases;
        self.failures += other.failures;
        self.pass &= other.pass;
        self.worst_residual = self.worst_residual.max(other.worst_residual);
        for (k, v) in &other.metrics {
            let slot = self.metrics.entry(k.clone()).or_insert(0.0);
            *slot += v;
        }
    }
}

/// The full batch-verification report.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
    pub suites: Vec<SuiteReport>,
    pub overall_pass: bool,
}

impl VerificationReport {
    pub fn new(suites: Vec<SuiteReport>, timestamp: Option<String>) -> Self {
        let overall_pass = suites.iter().all(|s| s.pass);
        VerificationReport {
            version: env!("CARGO_PKG_VERSION").to_owned(),
            timestamp,
            suites,
            overall_pass,
        }
    }

    /// Residual-summary rows for CSV export.
    pub fn csv(&self) -> String {
        let mut out = String::from("suite,cases,failures,worst_residual,pass\n");
        for s in &self.suites {
            out.push_str(&format!(
                "{},{},{},{:e},{}\n",
                s.suite, s.cases, s.failures, s.worst_residual, s.pass
            ));
        }
        out
    }
}
