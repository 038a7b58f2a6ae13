//! Command reports: a JSON form with stable ordering and a short text form.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use nlie_core::cochain::CohomologyRow;
use nlie_core::report::{CheckReport, Witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Absent,
    Skipped,
}

impl Status {
    fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Absent => "absent",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub verdict: bool,
    pub checks: Vec<CheckLine>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub table: Vec<CohomologyRow>,
    pub witnesses: Vec<Witness>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub data: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, u64>>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            verdict: true,
            checks: Vec::new(),
            table: Vec::new(),
            witnesses: Vec::new(),
            data: BTreeMap::new(),
            timings_ms: None,
        }
    }

    pub fn line(&mut self, name: &str, status: Status, detail: Option<String>) {
        if status == Status::Fail {
            self.verdict = false;
        }
        self.checks.push(CheckLine {
            name: name.to_string(),
            status,
            detail,
        });
    }

    /// Records a check; the witness (if any) is kept with 1-based indices.
    pub fn check(&mut self, name: &str, r: CheckReport) -> bool {
        let holds = r.holds;
        self.line(name, if holds { Status::Pass } else { Status::Fail }, None);
        if let Some(mut w) = r.witness {
            for a in &mut w.args {
                *a += 1;
            }
            self.witnesses.push(w);
        }
        holds
    }

    pub fn absent(&mut self, name: &str) {
        self.line(name, Status::Absent, None);
    }

    pub fn set(&mut self, key: &str, value: impl Serialize) {
        self.data.insert(key.to_string(), serde_json::to_value(value).expect("plain data"));
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}: {}", self.command, if self.verdict { "PASS" } else { "FAIL" });
        for c in &self.checks {
            let _ = write!(out, "  {:<28} {}", c.name, c.status.label());
            if let Some(d) = &c.detail {
                let _ = write!(out, "  ({d})");
            }
            out.push('\n');
        }
        if !self.table.is_empty() {
            let _ = writeln!(out, "  {:>3} {:>8} {:>8} {:>8}", "m", "dim C", "rank d", "dim H");
            for r in &self.table {
                let _ = writeln!(out, "  {:>3} {:>8} {:>8} {:>8}", r.m, r.cochain_dim, r.rank, r.dim);
            }
        }
        for w in &self.witnesses {
            let args: Vec<String> = w.args.iter().map(|a| a.to_string()).collect();
            let _ = writeln!(
                out,
                "  witness {} at ({}): lhs [{}] rhs [{}]",
                w.identity,
                args.join(","),
                w.lhs.join(", "),
                w.rhs.join(", ")
            );
        }
        for (k, v) in &self.data {
            let _ = writeln!(out, "  {k}: {v}");
        }
        if let Some(t) = &self.timings_ms {
            for (k, v) in t {
                let _ = writeln!(out, "  time {k}: {v} ms");
            }
        }
        out
    }
}
