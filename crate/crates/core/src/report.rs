//! Pass/fail records shared by every verification routine.

use std::fmt;

use serde::Serialize;
use serde_json::Value;

/// One named verification with its outcome and any counterexamples.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Check { name: name.into(), passed: true, detail: detail.into(), witnesses: Vec::new() }
    }

    pub fn fail(name: impl Into<String>, detail: impl Into<String>, witnesses: Vec<String>) -> Self {
        Check { name: name.into(), passed: false, detail: detail.into(), witnesses }
    }

    /// Passes iff `witnesses` is empty. Only the first few witnesses are kept.
    pub fn from_witnesses(
        name: impl Into<String>,
        detail: impl Into<String>,
        mut witnesses: Vec<String>,
    ) -> Self {
        witnesses.truncate(MAX_WITNESSES);
        Check { name: name.into(), passed: witnesses.is_empty(), detail: detail.into(), witnesses }
    }
}

pub const MAX_WITNESSES: usize = 8;

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] {}: {}", self.name, self.detail)?;
        for w in &self.witnesses {
            write!(f, "\n       witness: {w}")?;
        }
        Ok(())
    }
}

/// A complete run: what was asked, with which settings, and what was found.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub config: Value,
    pub checks: Vec<Check>,
    pub data: Value,
}

impl Report {
    pub fn new(command: impl Into<String>, config: Value) -> Self {
        Report { command: command.into(), config, checks: Vec::new(), data: Value::Null }
    }

    pub fn failed(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }

    pub fn all_passed(&self) -> bool {
        self.failed() == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("== {} ==\n", self.command);
        for c in &self.checks {
            out.push_str(&c.to_string());
            out.push('\n');
        }
        if !self.data.is_null() {
            out.push_str(&serde_json::to_string_pretty(&self.data).expect("data serializes"));
            out.push('\n');
        }
        let total = self.checks.len();
        out.push_str(&format!("{} of {} checks passed\n", total - self.failed(), total));
        out
    }
}
