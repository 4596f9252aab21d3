//! Machine-readable run reports.
//!
//! Everything except `timing` is a pure function of the input.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use parrep_core::report::{Check, CheckReport};

pub const TOOL: &str = "parrep";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupInfo {
    pub spec: String,
    pub name: String,
    pub order: usize,
    pub elements: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub status: Status,
    pub details: Vec<Check>,
    pub dims: BTreeMap<String, usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn new(name: &str) -> Self {
        SuiteReport { name: name.into(), status: Status::Pass, details: Vec::new(), dims: BTreeMap::new(), notes: Vec::new() }
    }

    pub fn skipped(name: &str, why: impl Into<String>) -> Self {
        SuiteReport { status: Status::Skipped, notes: vec![why.into()], ..Self::new(name) }
    }

    pub fn add(&mut self, prefix: &str, r: CheckReport) {
        for mut c in r.checks {
            c.name = format!("{prefix}{}", c.name);
            self.details.push(c);
        }
    }

    /// Records a construction error as a failed check.
    pub fn error(&mut self, what: &str, e: impl std::fmt::Display) {
        let mut r = CheckReport::new();
        r.assert(what, false, || format!("error: {e}"));
        self.add("", r);
    }

    pub fn dim(&mut self, name: impl Into<String>, d: usize) {
        self.dims.insert(name.into(), d);
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.details.iter().find(|c| c.name == name)
    }

    pub fn finish(mut self) -> Self {
        if self.status != Status::Skipped {
            self.status = if self.details.iter().all(|c| c.passed) { Status::Pass } else { Status::Fail };
        }
        self
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Timing {
    pub total_ms: u64,
    pub suites_ms: BTreeMap<String, u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub group: GroupInfo,
    pub status: Status,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub dims: BTreeMap<String, usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub suites: Vec<SuiteReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub files: Vec<String>,
    /// Wall-clock data; excluded from the determinism contract.
    pub timing: Timing,
}

impl Report {
    pub fn new(command: &str, group: GroupInfo) -> Self {
        Report {
            tool: TOOL.into(),
            version: VERSION.into(),
            command: command.into(),
            group,
            status: Status::Pass,
            dims: BTreeMap::new(),
            suites: Vec::new(),
            files: Vec::new(),
            timing: Timing::default(),
        }
    }

    pub fn suite(&self, name: &str) -> Option<&SuiteReport> {
        self.suites.iter().find(|s| s.name == name)
    }

    pub fn settle(&mut self) {
        self.status = if self.suites.iter().any(|s| s.status == Status::Fail) { Status::Fail } else { Status::Pass };
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Same as `to_json` with timings dropped.
    pub fn to_json_untimed(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if let Some(o) = v.as_object_mut() {
            o.remove("timing");
        }
        serde_json::to_string_pretty(&v).expect("value serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let g = &self.group;
        let _ = writeln!(out, "{} {} {}: {} (order {})", self.tool, self.version, self.command, g.name, g.order);
        if !self.dims.is_empty() {
            let _ = writeln!(out, "dims: {}", show_dims(&self.dims));
        }
        for s in &self.suites {
            let _ = writeln!(out, "[{}] {}", s.status.as_str(), s.name);
            if !s.dims.is_empty() {
                let _ = writeln!(out, "    dims: {}", show_dims(&s.dims));
            }
            for n in &s.notes {
                let _ = writeln!(out, "    note: {n}");
            }
            for c in &s.details {
                let mark = if c.passed { "ok  " } else { "FAIL" };
                let _ = writeln!(out, "    {mark} {} ({} instances)", c.name, c.instances);
                for f in &c.failures {
                    let _ = writeln!(out, "         {f}");
                }
                if c.failure_count > c.failures.len() {
                    let _ = writeln!(out, "         ... {} more", c.failure_count - c.failures.len());
                }
            }
        }
        for f in &self.files {
            let _ = writeln!(out, "wrote {f}");
        }
        let _ = writeln!(out, "status: {}", self.status.as_str());
        let _ = writeln!(out, "time: {} ms", self.timing.total_ms);
        out
    }
}

fn show_dims(d: &BTreeMap<String, usize>) -> String {
    d.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn info() -> GroupInfo {
        GroupInfo { spec: "cyclic:2".into(), name: "cyclic(2)".into(), order: 2, elements: vec!["e".into(), "g".into()] }
    }

    #[test]
    fn suite_status_follows_checks() {
        let mut s = SuiteReport::new("x");
        let mut r = CheckReport::new();
        r.assert("a", true, String::new);
        s.add("p.", r);
        assert_eq!(s.clone().finish().status, Status::Pass);
        s.error("build", "boom");
        let s = s.finish();
        assert_eq!(s.status, Status::Fail);
        assert!(s.check("p.a").unwrap().passed);
        assert_eq!(SuiteReport::skipped("y", "why").finish().status, Status::Skipped);
    }

    #[test]
    fn untimed_json_ignores_timing() {
        let mut a = Report::new("verify", info());
        a.suites.push(SuiteReport::skipped("y", "why"));
        let mut b = a.clone();
        b.timing.total_ms = 99;
        assert_ne!(a.to_json(), b.to_json());
        assert_eq!(a.to_json_untimed(), b.to_json_untimed());
        assert!(a.to_text().contains("[skipped] y"));
        a.settle();
        assert!(a.passed());
    }
}
