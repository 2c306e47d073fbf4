//! Machine-readable outcome of a verification.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, Value>,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub data: BTreeMap<String, Value>,
    pub elapsed_ms: u64,
}

impl CheckReport {
    pub fn new(check: impl Into<String>) -> Self {
        CheckReport {
            check: check.into(),
            n: None,
            params: BTreeMap::new(),
            pass: true,
            counterexample: None,
            data: BTreeMap::new(),
            elapsed_ms: 0,
        }
    }

    pub fn with_n(mut self, n: u32) -> Self {
        self.n = Some(n);
        self
    }

    pub fn param(mut self, key: &str, value: impl Serialize) -> Self {
        self.params.insert(key.to_owned(), serde_json::to_value(value).expect("serializable"));
        self
    }

    pub fn record(&mut self, key: &str, value: impl Serialize) {
        self.data.insert(key.to_owned(), serde_json::to_value(value).expect("serializable"));
    }

    /// Mark the check failed. The first counterexample is kept.
    pub fn fail(&mut self, counterexample: impl Into<String>) {
        self.pass = false;
        if self.counterexample.is_none() {
            self.counterexample = Some(counterexample.into());
        }
    }

    /// `fail` unless `cond` holds.
    pub fn require(&mut self, cond: bool, counterexample: impl FnOnce() -> String) {
        if !cond {
            self.fail(counterexample());
        }
    }

    /// Run `body` against this report, recording wall time. Internal errors
    /// are folded into a failed report; argument errors propagate.
    pub fn run(mut self, body: impl FnOnce(&mut Self) -> Result<()>) -> Result<Self> {
        let start = Instant::now();
        match body(&mut self) {
            Ok(()) => {}
            Err(Error::Internal(msg)) => self.fail(format!("internal: {msg}")),
            Err(e) => return Err(e),
        }
        self.elapsed_ms = start.elapsed().as_millis() as u64;
        Ok(self)
    }

    /// Merge a sub-report: failure and counterexample propagate, data is
    /// nested under the sub-check name.
    pub fn absorb(&mut self, sub: CheckReport) {
        if !sub.pass {
            let ce = sub.counterexample.clone().unwrap_or_default();
            self.fail(format!("{}: {}", sub.check, ce));
        }
        let key = sub.check.clone();
        self.data.insert(key, serde_json::to_value(&sub).expect("serializable"));
    }
}
