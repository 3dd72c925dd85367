//! Report types shared by every subcommand, plus their text rendering.

use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Pass,
    Fail,
    Indeterminate,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Indeterminate => "INDETERMINATE",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub ok: bool,
    pub what: String,
}

/// Outcome of one fixture case.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseReport {
    pub name: String,
    pub operation: String,
    pub inputs: Vec<String>,
    pub expected: String,
    pub status: Status,
    pub values: Map<String, Value>,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
    pub elapsed_ms: u64,
}

/// Builder used inside case bodies.
pub struct Case {
    report: CaseReport,
    start: Instant,
    indeterminate: bool,
}

impl Case {
    pub fn new(name: &str, operation: &str, expected: &str) -> Self {
        Case {
            report: CaseReport {
                name: name.into(),
                operation: operation.into(),
                inputs: Vec::new(),
                expected: expected.into(),
                status: Status::Pass,
                values: Map::new(),
                checks: Vec::new(),
                notes: Vec::new(),
                elapsed_ms: 0,
            },
            start: Instant::now(),
            indeterminate: false,
        }
    }

    pub fn input(&mut self, name: impl Into<String>) {
        self.report.inputs.push(name.into());
    }

    pub fn value(&mut self, key: &str, v: impl Into<Value>) {
        self.report.values.insert(key.into(), v.into());
    }

    pub fn check(&mut self, ok: bool, what: impl Into<String>) -> bool {
        self.report.checks.push(Check {
            ok,
            what: what.into(),
        });
        ok
    }

    pub fn note(&mut self, n: impl Into<String>) {
        self.report.notes.push(n.into());
    }

    /// Records an error from the core library; the case cannot be decided.
    pub fn error(&mut self, what: &str, e: impl std::fmt::Display) {
        self.indeterminate = true;
        self.report.checks.push(Check {
            ok: false,
            what: format!("{what}: error: {e}"),
        });
    }

    pub fn finish(mut self) -> CaseReport {
        let failed = self.report.checks.iter().any(|c| !c.ok);
        self.report.status = match (failed, self.indeterminate) {
            (false, _) => Status::Pass,
            (true, true) => Status::Indeterminate,
            (true, false) => Status::Fail,
        };
        self.report.elapsed_ms = self.start.elapsed().as_millis() as u64;
        self.report
    }
}

/// Report of `verify-paper`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub command: String,
    pub seed: u64,
    pub status: Status,
    pub cases: Vec<CaseReport>,
}

impl VerifyReport {
    pub fn new(seed: u64, cases: Vec<CaseReport>) -> Self {
        let status = if cases.iter().all(|c| c.status == Status::Pass) {
            Status::Pass
        } else if cases.iter().any(|c| c.status == Status::Fail) {
            Status::Fail
        } else {
            Status::Indeterminate
        };
        VerifyReport {
            command: "verify-paper".into(),
            seed,
            status,
            cases,
        }
    }

    /// Deterministic text: timings are left out on purpose.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "hilbcheck verify-paper (seed {})", self.seed).unwrap();
        for c in &self.cases {
            writeln!(s).unwrap();
            writeln!(s, "{:<13} {}", c.status.label(), c.name).unwrap();
            writeln!(s, "  operation: {}", c.operation).unwrap();
            if !c.inputs.is_empty() {
                writeln!(s, "  inputs: {}", c.inputs.join(", ")).unwrap();
            }
            writeln!(s, "  expected: {}", c.expected).unwrap();
            for (k, v) in &c.values {
                writeln!(s, "  {k} = {}", plain(v)).unwrap();
            }
            for ch in &c.checks {
                writeln!(s, "  [{}] {}", if ch.ok { "pass" } else { "FAIL" }, ch.what).unwrap();
            }
            for n in &c.notes {
                writeln!(s, "  note: {n}").unwrap();
            }
        }
        let count = |st: Status| self.cases.iter().filter(|c| c.status == st).count();
        writeln!(s).unwrap();
        writeln!(
            s,
            "summary: {} PASS, {} FAIL, {} INDETERMINATE ({} case{})",
            count(Status::Pass),
            count(Status::Fail),
            count(Status::Indeterminate),
            self.cases.len(),
            if self.cases.len() == 1 { "" } else { "s" }
        )
        .unwrap();
        s
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Report of a single analysis subcommand.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub command: String,
    pub input: String,
    pub seed: u64,
    pub result: Map<String, Value>,
}
