//! JSON verification reports.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::source::Operator;

pub const TOOL: &str = "hbl";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorDescriptor {
    pub name: String,
    pub d: usize,
    pub q: String,
    pub parameter: String,
}

impl OperatorDescriptor {
    pub fn of(op: &Operator) -> Self {
        OperatorDescriptor {
            name: op.name().to_string(),
            d: op.d(),
            q: op.q_string(),
            parameter: op.parameter(),
        }
    }
}

/// One verified claim. `expected` is the value from an independent route (absent when the check
/// is an identity with no second value); `routes` names every route that produced a value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckRecord {
    pub name: String,
    pub degree: Option<usize>,
    pub expected: Option<String>,
    pub computed: String,
    pub routes: Vec<String>,
    pub pass: bool,
    pub elapsed_ms: u64,
}

/// A dimension sequence with the provenance of each entry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableRecord {
    pub label: String,
    pub values: Vec<u64>,
    pub provenance: Vec<String>,
}

/// A recorded fact that does not affect the exit status, such as a variant of a formula that
/// is known to fail.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Observation {
    pub name: String,
    pub degree: Option<usize>,
    pub statement: String,
    pub value: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerificationReport {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub operator: OperatorDescriptor,
    pub checks: Vec<CheckRecord>,
    pub tables: Vec<TableRecord>,
    pub observations: Vec<Observation>,
    pub all_passed: bool,
}

impl VerificationReport {
    pub fn new(command: &str, op: &Operator) -> Self {
        VerificationReport {
            tool: TOOL.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            operator: OperatorDescriptor::of(op),
            checks: Vec::new(),
            tables: Vec::new(),
            observations: Vec::new(),
            all_passed: true,
        }
    }

    pub fn push(&mut self, check: CheckRecord) {
        self.all_passed &= check.pass;
        self.checks.push(check);
    }

    /// Appends another report's contents.
    pub fn absorb(&mut self, other: VerificationReport) {
        for c in other.checks {
            self.push(c);
        }
        self.tables.extend(other.tables);
        self.observations.extend(other.observations);
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn find(&self, name: &str, degree: Option<usize>) -> Option<&CheckRecord> {
        self.checks
            .iter()
            .find(|c| c.name == name && c.degree == degree)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}

/// Milliseconds since `start`.
pub fn elapsed_ms(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

/// Builder for a check comparing two or more routes.
pub struct Check {
    name: String,
    degree: Option<usize>,
    start: Instant,
}

impl Check {
    pub fn start(name: &str, degree: Option<usize>) -> Self {
        Check {
            name: name.to_string(),
            degree,
            start: Instant::now(),
        }
    }

    /// All `values` (one per route) must agree; the first is reported as computed and the
    /// second, if any, as expected.
    pub fn agree(self, routes: &[(&str, String)]) -> CheckRecord {
        let pass = routes.windows(2).all(|w| w[0].1 == w[1].1);
        CheckRecord {
            name: self.name,
            degree: self.degree,
            computed: routes.first().map(|r| r.1.clone()).unwrap_or_default(),
            expected: routes.get(1).map(|r| r.1.clone()),
            routes: routes.iter().map(|r| r.0.to_string()).collect(),
            pass,
            elapsed_ms: elapsed_ms(self.start),
        }
    }

    /// A single-route verdict.
    pub fn verdict(self, route: &str, computed: String, pass: bool) -> CheckRecord {
        CheckRecord {
            name: self.name,
            degree: self.degree,
            expected: None,
            computed,
            routes: vec![route.to_string()],
            pass,
            elapsed_ms: elapsed_ms(self.start),
        }
    }

    /// Compare against a fixed expected value.
    pub fn expect(self, route: &str, expected: String, computed: String) -> CheckRecord {
        CheckRecord {
            name: self.name,
            degree: self.degree,
            pass: expected == computed,
            expected: Some(expected),
            computed,
            routes: vec![route.to_string()],
            elapsed_ms: elapsed_ms(self.start),
        }
    }
}
