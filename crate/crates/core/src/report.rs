//! Structured results of verification runs.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::paths::GradedDimTable;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), pass, detail: detail.into() }
    }
}

/// Everything needed to re-run a report: the quiver text, the field and the
/// options that influenced the result.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputFingerprint {
    pub quiver: String,
    pub field: String,
    pub options: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub input: InputFingerprint,
    pub tables: BTreeMap<String, GradedDimTable>,
    pub checks: Vec<Check>,
    pub pass: bool,
    /// Command-specific results beyond tables and checks.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub data: BTreeMap<String, serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, u64>>,
}

impl RunReport {
    pub fn new(command: impl Into<String>, input: InputFingerprint) -> Self {
        RunReport {
            command: command.into(),
            input,
            tables: BTreeMap::new(),
            checks: Vec::new(),
            pass: true,
            data: BTreeMap::new(),
            timings_ms: None,
        }
    }

    pub fn push(&mut self, check: Check) {
        self.pass &= check.pass;
        self.checks.push(check);
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = Check>) {
        for c in checks {
            self.push(c);
        }
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}
