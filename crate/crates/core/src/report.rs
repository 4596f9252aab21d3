//! Itemized pass/fail records shared by every checker.

use serde::Serialize;

/// Failures kept verbatim per check; the rest are only counted.
pub const MAX_LISTED_FAILURES: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Number of instances evaluated.
    pub instances: usize,
    pub failure_count: usize,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub checks: Vec<Check>,
}

impl CheckReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&mut self, name: impl Into<String>, instances: usize, failures: Vec<String>) {
        let failure_count = failures.len();
        let mut failures = failures;
        failures.truncate(MAX_LISTED_FAILURES);
        self.checks.push(Check { name: name.into(), passed: failure_count == 0, instances, failure_count, failures });
    }

    /// Records a single yes/no fact.
    pub fn assert(&mut self, name: impl Into<String>, ok: bool, detail: impl FnOnce() -> String) {
        let failures = if ok { Vec::new() } else { vec![detail()] };
        self.record(name, 1, failures);
    }

    pub fn extend_prefixed(&mut self, prefix: &str, other: CheckReport) {
        for mut c in other.checks {
            c.name = format!("{prefix}{}", c.name);
            self.checks.push(c);
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Whether the named check exists and passed.
    pub fn ok(&self, name: &str) -> bool {
        self.get(name).is_some_and(|c| c.passed)
    }

    pub fn failed(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn summary(&self) -> String {
        let bad: Vec<String> = self
            .failed()
            .map(|c| match c.failures.first() {
                Some(f) => format!("{} ({} failures, e.g. {f})", c.name, c.failure_count),
                None => c.name.clone(),
            })
            .collect();
        if bad.is_empty() {
            format!("{} checks passed", self.checks.len())
        } else {
            format!("failed: {}", bad.join("; "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failures_are_truncated_but_counted() {
        let mut r = CheckReport::new();
        r.record("x", 100, (0..40).map(|i| i.to_string()).collect());
        let c = r.get("x").unwrap();
        assert_eq!(c.failure_count, 40);
        assert_eq!(c.failures.len(), MAX_LISTED_FAILURES);
        assert!(!r.passed());
    }
}
