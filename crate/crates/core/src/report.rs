//! Pass/fail reports produced by the exhaustive verifiers.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_counterexamples(counterexamples: &[Value]) -> Self {
        if counterexamples.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn is_pass(self) -> bool {
        self == Status::Pass
    }
}

/// Field order is part of the JSON contract: `claim`, `range`, `status`,
/// `counterexamples`, `witnesses`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub claim: String,
    pub range: BTreeMap<String, u64>,
    pub status: Status,
    pub counterexamples: Vec<Value>,
    pub witnesses: Vec<Value>,
}

impl VerificationReport {
    pub fn new(claim: impl Into<String>) -> Self {
        VerificationReport {
            claim: claim.into(),
            range: BTreeMap::new(),
            status: Status::Pass,
            counterexamples: Vec::new(),
            witnesses: Vec::new(),
        }
    }

    pub fn with_range(mut self, key: &str, value: u64) -> Self {
        self.range.insert(key.to_string(), value);
        self
    }

    pub fn fail(&mut self, counterexample: Value) {
        self.counterexamples.push(counterexample);
        self.status = Status::Fail;
    }

    /// Folds another report's findings into this one (used when a claim is
    /// checked as several sub-checks).
    pub fn absorb(&mut self, other: VerificationReport) {
        for (k, v) in other.range {
            self.range.entry(k).or_insert(v);
        }
        self.counterexamples.extend(other.counterexamples);
        self.witnesses.extend(other.witnesses);
        self.status = Status::from_counterexamples(&self.counterexamples);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
