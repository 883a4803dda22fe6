//! The JSON report shared by every command: a cell table plus named checks.

use serde::{Deserialize, Serialize};

use crate::hochschild::HodgeCell;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub witness: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Check { name: name.into(), status: Status::Pass, witness: None }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        Check { name: name.into(), status: Status::Fail, witness: Some(witness.into()) }
    }

    pub fn from_result(name: impl Into<String>, r: Result<(), String>) -> Self {
        match r {
            Ok(()) => Self::pass(name),
            Err(w) => Self::fail(name, w),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Collects verdicts by name, keeping the first failure witness of each.
/// Names keep their first-seen order.
#[derive(Clone, Debug, Default)]
pub struct CheckLog {
    checks: Vec<Check>,
}

impl CheckLog {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record<F: FnOnce() -> String>(&mut self, name: &str, ok: bool, witness: F) {
        let pos = match self.checks.iter().position(|c| c.name == name) {
            Some(p) => p,
            None => {
                self.checks.push(Check::pass(name));
                self.checks.len() - 1
            }
        };
        let entry = &mut self.checks[pos];
        if !ok && entry.passed() {
            *entry = Check::fail(name, witness());
        }
    }

    pub fn push(&mut self, check: Check) {
        let ok = check.passed();
        let witness = check.witness.clone().unwrap_or_default();
        self.record(&check.name, ok, || witness);
    }

    pub fn merge(&mut self, other: CheckLog) {
        for c in other.checks {
            self.push(c);
        }
    }

    pub fn checks(&self) -> &[Check] {
        &self.checks
    }

    pub fn into_checks(self) -> Vec<Check> {
        self.checks
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraInfo {
    pub k: usize,
    pub module: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HodgeReport {
    pub algebra: AlgebraInfo,
    pub cells: Vec<HodgeCell>,
    pub checks: Vec<Check>,
}

impl HodgeReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}
