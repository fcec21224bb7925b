//! Experiment reports and their CSV / JSON forms.
//!
//! Matrix-valued quantities are recorded by their traces in the
//! `computed`/`target` columns; their errors are operator norms.

use std::collections::BTreeMap;

use hyperspinor_core::linalg::{op_norm, CMatrix};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const SCHEMA_VERSION: u32 = 1;

pub const CSV_COLUMNS: [&str; 11] = [
    "scenario",
    "n",
    "sigma",
    "lambda",
    "R_or_t",
    "computed_re",
    "computed_im",
    "target_re",
    "target_im",
    "abs_err",
    "rel_err",
];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub scenario: String,
    pub n: usize,
    pub sigma: String,
    pub lambda: f64,
    #[serde(rename = "R_or_t")]
    pub r_or_t: f64,
    pub computed_re: f64,
    pub computed_im: f64,
    pub target_re: f64,
    pub target_im: f64,
    pub abs_err: f64,
    pub rel_err: f64,
    /// How the computed value was obtained, e.g. `quadrature` or `closed-form`.
    pub route: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub scenario: String,
    pub criterion: u32,
    pub criterion_text: String,
    pub parameters: BTreeMap<String, String>,
    pub records: Vec<Record>,
    pub summary: BTreeMap<String, f64>,
    pub notes: Vec<String>,
    pub passed: bool,
    pub wall_time_s: f64,
}

/// `|a - b|` and the error relative to `|b|` (absolute when `b = 0`).
fn errors(abs: f64, scale: f64) -> (f64, f64) {
    (abs, if scale > 0.0 { abs / scale } else { abs })
}

impl Report {
    pub fn new(scenario: &str, criterion: u32, criterion_text: &str) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            scenario: scenario.to_string(),
            criterion,
            criterion_text: criterion_text.to_string(),
            parameters: BTreeMap::new(),
            records: Vec::new(),
            summary: BTreeMap::new(),
            notes: Vec::new(),
            passed: true,
            wall_time_s: 0.0,
        }
    }

    #[allow(clippy::too_many_arguments)]
    pub fn push_raw(
        &mut self,
        n: usize,
        sigma: &str,
        lambda: f64,
        r_or_t: f64,
        computed: Complex64,
        target: Complex64,
        abs_err: f64,
        rel_err: f64,
        route: &str,
    ) {
        self.records.push(Record {
            scenario: self.scenario.clone(),
            n,
            sigma: sigma.to_string(),
            lambda,
            r_or_t,
            computed_re: computed.re,
            computed_im: computed.im,
            target_re: target.re,
            target_im: target.im,
            abs_err,
            rel_err,
            route: route.to_string(),
        });
    }

    /// A scalar comparison.
    #[allow(clippy::too_many_arguments)]
    pub fn push(
        &mut self,
        n: usize,
        sigma: &str,
        lambda: f64,
        r_or_t: f64,
        computed: Complex64,
        target: Complex64,
        route: &str,
    ) -> f64 {
        let (a, r) = errors((computed - target).norm(), target.norm());
        self.push_raw(n, sigma, lambda, r_or_t, computed, target, a, r, route);
        r
    }

    /// A matrix comparison: traces in the value columns, operator-norm errors.
    #[allow(clippy::too_many_arguments)]
    pub fn push_matrix(
        &mut self,
        n: usize,
        sigma: &str,
        lambda: f64,
        r_or_t: f64,
        computed: &CMatrix,
        target: &CMatrix,
        route: &str,
    ) -> f64 {
        let (a, r) = errors(op_norm(&(computed - target)), op_norm(target));
        self.push_raw(n, sigma, lambda, r_or_t, computed.trace(), target.trace(), a, r, route);
        r
    }

    /// Summary values must be finite to survive JSON; others become notes.
    pub fn summarize(&mut self, key: &str, value: f64) {
        if value.is_finite() {
            self.summary.insert(key.to_string(), value);
        } else {
            self.notes.push(format!("{key} is not finite ({value})"));
        }
    }

    pub fn require(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.passed = false;
            self.notes.push(format!("FAILED: {}", what.into()));
        }
    }

    pub fn max_rel_err(&self) -> f64 {
        self.records.iter().map(|r| r.rel_err).fold(0.0, f64::max)
    }

    /// CSV with a `#` header citing the criterion; wall time is omitted so
    /// that equal runs give equal bytes.
    pub fn to_csv(&self) -> CliResult<String> {
        let mut out = String::new();
        out.push_str(&format!("# scenario: {}\n", self.scenario));
        out.push_str(&format!("# acceptance criterion {}: {}\n", self.criterion, self.criterion_text));
        out.push_str(&format!("# schema_version: {}\n", self.schema_version));
        out.push_str(&format!("# status: {}\n", if self.passed { "PASS" } else { "FAIL" }));
        for (k, v) in &self.parameters {
            out.push_str(&format!("# param {k} = {v}\n"));
        }
        for (k, v) in &self.summary {
            out.push_str(&format!("# summary {k} = {v:e}\n"));
        }
        for note in &self.notes {
            out.push_str(&format!("# note {note}\n"));
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(CSV_COLUMNS).map_err(|e| CliError::Output(e.to_string()))?;
        for r in &self.records {
            let f = |x: f64| format!("{x:e}");
            w.write_record([
                r.scenario.clone(),
                r.n.to_string(),
                r.sigma.clone(),
                f(r.lambda),
                f(r.r_or_t),
                f(r.computed_re),
                f(r.computed_im),
                f(r.target_re),
                f(r.target_im),
                f(r.abs_err),
                f(r.rel_err),
            ])
            .map_err(|e| CliError::Output(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Output(e.to_string()))?;
        out.push_str(&String::from_utf8(bytes).map_err(|e| CliError::Output(e.to_string()))?);
        Ok(out)
    }

    pub fn to_json(&self) -> CliResult<String> {
        serde_json::to_string_pretty(self).map_err(|e| CliError::Output(e.to_string()))
    }

    pub fn from_json(text: &str) -> CliResult<Self> {
        serde_json::from_str(text).map_err(|e| CliError::Output(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new("jacobi-connection", 4, "connection identity");
        r.parameters.insert("n".into(), "2".into());
        r.push(2, "full", 0.7, 1.2, Complex64::new(0.1, 1.0 / 3.0), Complex64::new(0.1, 0.3), "series");
        r.push(2, "full", 0.7, 1.3, Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), "series");
        r.summarize("max_rel_err", 1e-300);
        r.wall_time_s = 0.123;
        r
    }

    #[test]
    fn empty_report_is_header_only() {
        let csv = Report::new("x", 1, "y").to_csv().unwrap();
        let body: Vec<&str> = csv.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(body, vec![CSV_COLUMNS.join(",")]);
    }

    #[test]
    fn json_round_trip_is_exact() {
        let r = sample();
        let back = Report::from_json(&r.to_json().unwrap()).unwrap();
        assert_eq!(back, r);
        assert!(r.to_json().unwrap().contains("\"schema_version\": 1"));
    }

    #[test]
    fn csv_rows_parse_back() {
        let r = sample();
        let csv = r.to_csv().unwrap();
        let mut rd = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(csv.as_bytes());
        let rows: Vec<csv::StringRecord> = rd.records().map(|x| x.unwrap()).collect();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0][9].parse::<f64>().unwrap(), r.records[0].abs_err);
        assert_eq!(r.records[1].rel_err, 0.0);
    }

    #[test]
    fn non_finite_summary_becomes_a_note() {
        let mut r = sample();
        r.summarize("bad", f64::NAN);
        assert!(!r.summary.contains_key("bad"));
        assert!(Report::from_json(&r.to_json().unwrap()).is_ok());
    }
}
