use std::fmt::Write as _;

use origami_kz::{Direction, Mat2};
use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    Mismatch,
    CapExceeded,
    /// Computed fine but differs from an unproven expectation.
    Flagged,
    Error,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: Value,
    pub actual: Value,
    pub passed: bool,
}

impl Check {
    pub fn new<T: Serialize + PartialEq>(name: impl Into<String>, expected: T, actual: T) -> Self {
        let passed = expected == actual;
        Check {
            name: name.into(),
            expected: serde_json::to_value(expected).unwrap_or(Value::Null),
            actual: serde_json::to_value(actual).unwrap_or(Value::Null),
            passed,
        }
    }
}

/// A rectangular table of integers, printed in text mode.
#[derive(Clone, Debug, Serialize)]
pub struct Table {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<(String, Vec<i64>)>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Record {
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stratum: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orbit: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub directions: Vec<Direction>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub matrices: Vec<Mat2>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
    pub status: Option<Status>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub tables: Vec<Table>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub detail: Value,
}

impl Record {
    pub fn new(label: impl Into<String>) -> Self {
        Record { label: label.into(), status: Some(Status::Ok), ..Record::default() }
    }

    pub fn status(&self) -> Status {
        self.status.unwrap_or(Status::Ok)
    }

    pub fn failed(label: impl Into<String>, err: &origami_kz::Error) -> Self {
        let status = match err {
            origami_kz::Error::IndexExceedsCap { .. } | origami_kz::Error::OrbitTooLarge { .. } => Status::CapExceeded,
            _ => Status::Error,
        };
        Record { status: Some(status), message: Some(err.to_string()), ..Record::new(label) }
    }

    /// Records the check and downgrades the status on failure.
    pub fn check(&mut self, c: Check) {
        if !c.passed && self.status() == Status::Ok {
            self.status = Some(Status::Mismatch);
        }
        self.checks.push(c);
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub records: Vec<Record>,
    /// Whether every record has status `ok`; absent for exploratory commands.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub passed: Option<bool>,
}

impl Report {
    pub fn new(command: &str, records: Vec<Record>) -> Self {
        let passed = records.iter().all(|r| r.status() == Status::Ok);
        Report { schema_version: SCHEMA_VERSION, command: command.into(), records, passed: Some(passed) }
    }

    pub fn exploratory(command: &str, records: Vec<Record>) -> Self {
        Report { schema_version: SCHEMA_VERSION, command: command.into(), records, passed: None }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            render_record(&mut out, r);
        }
        match self.passed {
            Some(true) => out.push_str("all checks passed\n"),
            Some(false) => {
                let bad = self.records.iter().filter(|r| r.status() != Status::Ok).count();
                let _ = writeln!(out, "{bad} of {} records failed", self.records.len());
            }
            None => {}
        }
        out
    }
}

fn fmt_mat(m: &Mat2) -> String {
    let [[a, b], [c, d]] = m.rows();
    format!("(({a},{b}),({c},{d}))")
}

fn render_record(out: &mut String, r: &Record) {
    let status = serde_json::to_value(r.status()).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
    let _ = writeln!(out, "{} [{status}]", r.label);
    if let Some(d) = r.degree {
        let _ = write!(out, "  degree {d}");
        if let Some(s) = &r.stratum {
            let _ = write!(out, ", stratum {s}");
        }
        out.push('\n');
    }
    if let Some(o) = &r.orbit {
        let _ = writeln!(out, "  orbit {o}");
    }
    if !r.directions.is_empty() {
        let dirs: Vec<String> = r.directions.iter().map(|d| d.to_string()).collect();
        let _ = writeln!(out, "  directions {}", dirs.join(" "));
    }
    for (i, m) in r.matrices.iter().enumerate() {
        let _ = writeln!(out, "  D{} = {}", i + 1, fmt_mat(m));
    }
    if let Some(k) = r.index {
        let _ = writeln!(out, "  index {k}");
    }
    if let Some(msg) = &r.message {
        let _ = writeln!(out, "  {msg}");
    }
    for t in &r.tables {
        render_table(out, t);
    }
    let failed: Vec<&Check> = r.checks.iter().filter(|c| !c.passed).collect();
    if !r.checks.is_empty() {
        let _ = writeln!(out, "  {} of {} checks passed", r.checks.len() - failed.len(), r.checks.len());
    }
    for c in failed {
        let _ = writeln!(out, "  MISMATCH {}: expected {}, got {}", c.name, c.expected, c.actual);
    }
    if !r.detail.is_null() && r.tables.is_empty() {
        let _ = writeln!(out, "  {}", r.detail);
    }
}

fn render_table(out: &mut String, t: &Table) {
    let width = t
        .columns
        .iter()
        .map(String::len)
        .chain(t.rows.iter().flat_map(|(_, v)| v.iter().map(|x| x.to_string().len())))
        .max()
        .unwrap_or(1)
        + 2;
    let head = t.rows.iter().map(|(n, _)| n.len()).max().unwrap_or(1).max(t.title.len()) + 2;
    let _ = write!(out, "  {:<head$}", t.title);
    for c in &t.columns {
        let _ = write!(out, "{c:>width$}");
    }
    out.push('\n');
    for (name, vals) in &t.rows {
        let _ = write!(out, "  {name:<head$}");
        for v in vals {
            let _ = write!(out, "{v:>width$}");
        }
        out.push('\n');
    }
}
