//! Named pass/fail checks collected by the report-valued operations.

use serde::Serialize;

/// One verified clause.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    /// Short identifier of the clause.
    pub name: String,
    /// Whether it holds.
    pub passed: bool,
    /// Counts or the offending input.
    pub detail: String,
}

impl Check {
    /// A check with the given outcome.
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

impl std::fmt::Display for Check {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let tag = if self.passed { "ok" } else { "FAILED" };
        if self.detail.is_empty() {
            write!(f, "{tag} {}", self.name)
        } else {
            write!(f, "{tag} {}: {}", self.name, self.detail)
        }
    }
}

/// True when every check passed.
pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}

/// Accumulates failures of one clause over many cases.
#[derive(Debug, Clone)]
pub struct Tally {
    name: String,
    cases: usize,
    failures: Vec<String>,
}

impl Tally {
    /// An empty tally for the named clause.
    pub fn new(name: impl Into<String>) -> Tally {
        Tally {
            name: name.into(),
            cases: 0,
            failures: Vec::new(),
        }
    }

    /// Records one case.
    pub fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    /// Number of cases recorded.
    pub fn cases(&self) -> usize {
        self.cases
    }

    /// The finished check; lists at most three failures.
    pub fn finish(self) -> Check {
        let passed = self.failures.is_empty();
        let detail = if passed {
            format!("{} cases", self.cases)
        } else {
            let shown: Vec<&str> = self.failures.iter().take(3).map(|s| s.as_str()).collect();
            format!(
                "{} of {} cases failed; {}",
                self.failures.len(),
                self.cases,
                shown.join("; ")
            )
        };
        Check::new(self.name, passed, detail)
    }
}
