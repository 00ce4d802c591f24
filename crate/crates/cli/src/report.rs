use std::path::{Path, PathBuf};
use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::config::SCHEMA_VERSION;
use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// The property holds on every check.
    Pass,
    /// The designated counterexample misbehaves as predicted.
    CounterexampleConfirmed,
    Fail,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass | Verdict::CounterexampleConfirmed => 0,
            Verdict::Fail => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// What was required, in words.
    pub criterion: String,
    pub evidence: Value,
}

/// A table written to `<name>.csv`.
#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub name: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Curve {
    pub fn numeric(name: impl Into<String>, header: &[&str], rows: impl IntoIterator<Item = Vec<f64>>) -> Self {
        Self {
            name: name.into(),
            header: header.iter().map(|h| h.to_string()).collect(),
            rows: rows
                .into_iter()
                .map(|r| r.into_iter().map(|v| v.to_string()).collect())
                .collect(),
        }
    }

    pub fn file_name(&self) -> String {
        format!("{}.csv", self.name)
    }
}

/// Outcome of one preset or pipeline. Serializes to `report.json`; timing and
/// curves are written separately so the JSON is reproducible byte for byte.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub tool_version: String,
    pub target: String,
    pub seed: Option<u64>,
    /// Resolved parameters and tolerances.
    pub inputs: Value,
    pub checks: Vec<Check>,
    pub verdict: Verdict,
    pub artifacts: Vec<String>,
    #[serde(skip)]
    pub curves: Vec<Curve>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl RunReport {
    pub fn new(target: impl Into<String>, seed: Option<u64>, inputs: impl Serialize) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            target: target.into(),
            seed,
            inputs: serde_json::to_value(inputs).unwrap_or(Value::Null),
            checks: Vec::new(),
            verdict: Verdict::Fail,
            artifacts: Vec::new(),
            curves: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    pub fn check(&mut self, name: &str, passed: bool, criterion: impl Into<String>, evidence: Value) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            criterion: criterion.into(),
            evidence,
        });
    }

    pub fn curve(&mut self, curve: Curve) {
        self.artifacts.push(curve.file_name());
        self.curves.push(curve);
    }

    /// Sets the verdict to `success` when every check passed and there is at
    /// least one, otherwise to `Fail`.
    pub fn finish(mut self, success: Verdict) -> Self {
        let ok = !self.checks.is_empty() && self.checks.iter().all(|c| c.passed);
        self.verdict = if ok { success } else { Verdict::Fail };
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

fn io<T>(path: &Path, r: std::io::Result<T>) -> Result<T> {
    r.map_err(|source| CliError::IoFailure {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes `report.json`, one CSV per curve and `timing.json` into `dir`.
pub fn emit_report(report: &RunReport, dir: &Path) -> Result<Vec<PathBuf>> {
    io(dir, std::fs::create_dir_all(dir))?;
    let mut written = Vec::new();
    let path = dir.join("report.json");
    io(&path, std::fs::write(&path, report.to_json()))?;
    written.push(path);
    for curve in &report.curves {
        let path = dir.join(curve.file_name());
        let mut w = csv::Writer::from_path(&path).map_err(|e| csv_error(&path, e))?;
        w.write_record(&curve.header).map_err(|e| csv_error(&path, e))?;
        for row in &curve.rows {
            w.write_record(row).map_err(|e| csv_error(&path, e))?;
        }
        io(&path, w.flush())?;
        written.push(path);
    }
    let path = dir.join("timing.json");
    let timing = serde_json::json!({ "target": report.target, "wall_clock_seconds": report.elapsed.as_secs_f64() });
    io(&path, std::fs::write(&path, format!("{timing}\n")))?;
    written.push(path);
    Ok(written)
}

fn csv_error(path: &Path, e: csv::Error) -> CliError {
    CliError::IoFailure {
        path: path.to_path_buf(),
        source: e.into(),
    }
}
