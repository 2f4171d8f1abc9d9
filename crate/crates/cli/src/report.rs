//! The JSON report every subcommand writes, and CSV flattening of record tables.

use std::io::Write;
use std::path::Path;

use diophant::fmt_q;
use diophant::psi::PsiRecordTable;
use diophant::solvers::PrimitiveScan;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::suite::{Check, Status};

/// Output of one invocation. Carries no timestamp, so equal inputs give equal bytes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input_sha256: Option<String>,
    pub parameters: Value,
    pub result: Value,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl Report {
    pub fn new(command: &str, input_sha256: Option<String>, parameters: Value, result: impl Serialize, checks: Vec<Check>) -> Self {
        let pass = checks.iter().all(|c| c.status != Status::Fail);
        Self {
            command: command.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            input_sha256,
            parameters,
            result: serde_json::to_value(result).expect("results serialise"),
            checks,
            pass,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialise");
        s.push('\n');
        s
    }
}

pub fn write_psi_csv(path: &Path, table: &PsiRecordTable) -> std::io::Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["t", "psi", "witness"])?;
    for r in &table.records {
        w.write_record([r.t.to_string(), fmt_q(&r.psi), join(&r.witness)])?;
    }
    w.flush()
}

pub fn write_scan_csv(path: &Path, scan: &PrimitiveScan) -> std::io::Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["x", "y", "residual", "product", "log_sq_lo", "log_sq_hi", "log_sqrt_lo", "log_sqrt_hi"])?;
    for r in &scan.records {
        let ends = |i: &Option<diophant::interval::Interval>| match i {
            Some(i) => [fmt_q(&i.lo), fmt_q(&i.hi)],
            None => [String::new(), String::new()],
        };
        let [a, b] = ends(&r.log_sq);
        let [c, d] = ends(&r.log_sqrt);
        w.write_record([r.x.to_string(), r.y.to_string(), fmt_q(&r.residual), fmt_q(&r.product), a, b, c, d])?;
    }
    w.flush()
}

fn join(v: &[i64]) -> String {
    v.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")
}

pub fn write_file(path: &Path, contents: &str) -> std::io::Result<()> {
    std::fs::File::create(path)?.write_all(contents.as_bytes())
}
