//! Structured results for the verification suites: each suite produces a
//! report of items, every item tied to a claim anchor from the fixed
//! registry, with deterministic parameters and JSON output.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};

pub const CHECK_REPORT_SCHEMA: &str = "flab/check-report/v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ItemStatus {
    Pass,
    Fail,
    CapExceeded,
    Skipped,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckItem {
    pub id: String,
    /// Key into the claim registry (`anchors`).
    pub anchor: String,
    pub status: ItemStatus,
    pub value: Value,
    pub runtime_ms: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckReport {
    pub schema: String,
    pub suite: String,
    pub version: String,
    pub params: BTreeMap<String, String>,
    pub seed: u64,
    pub items: Vec<CheckItem>,
    /// True when no item failed. CapExceeded and Skipped items do not fail
    /// the report; they record honestly that a bound was hit or an input was
    /// not supplied.
    pub passed: bool,
}

impl CheckReport {
    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn render_text(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        writeln!(out, "suite: {} (version {}, seed {})", self.suite, self.version, self.seed)
            .unwrap();
        for (key, value) in &self.params {
            writeln!(out, "  param {key} = {value}").unwrap();
        }
        for item in &self.items {
            let tag = match item.status {
                ItemStatus::Pass => "PASS",
                ItemStatus::Fail => "FAIL",
                ItemStatus::CapExceeded => "CAP ",
                ItemStatus::Skipped => "SKIP",
            };
            writeln!(out, "{tag} {} [{}] {}", item.id, item.anchor, compact(&item.value))
                .unwrap();
        }
        writeln!(out, "result: {}", if self.passed { "PASS" } else { "FAIL" }).unwrap();
        out
    }
}

fn compact(value: &Value) -> String {
    if value.is_null() {
        String::new()
    } else {
        serde_json::to_string(value).expect("value serializes")
    }
}

/// The outcome an item closure reports before timing is attached.
pub struct Outcome {
    pub ok: bool,
    pub value: Value,
}

impl Outcome {
    pub fn new(ok: bool, value: Value) -> Outcome {
        Outcome { ok, value }
    }
}

pub struct SuiteBuilder {
    suite: String,
    params: BTreeMap<String, String>,
    seed: u64,
    items: Vec<CheckItem>,
}

impl SuiteBuilder {
    pub fn new(suite: &str, seed: u64) -> SuiteBuilder {
        SuiteBuilder { suite: suite.into(), params: BTreeMap::new(), seed, items: Vec::new() }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) {
        self.params.insert(key.into(), value.to_string());
    }

    /// Run one check. A CapExceeded error becomes a CapExceeded item; any
    /// other error becomes a Fail carrying the error text.
    pub fn item<F>(&mut self, id: &str, anchor: &str, run: F)
    where
        F: FnOnce() -> Result<Outcome>,
    {
        let start = Instant::now();
        let (status, value) = match run() {
            Ok(outcome) => {
                (if outcome.ok { ItemStatus::Pass } else { ItemStatus::Fail }, outcome.value)
            }
            Err(Error::CapExceeded { cap, context }) => {
                (ItemStatus::CapExceeded, json!({ "cap": cap, "context": context }))
            }
            Err(other) => (ItemStatus::Fail, json!({ "error": other.to_string() })),
        };
        self.items.push(CheckItem {
            id: id.into(),
            anchor: anchor.into(),
            status,
            value,
            runtime_ms: start.elapsed().as_millis() as u64,
        });
    }

    pub fn skip(&mut self, id: &str, anchor: &str, reason: &str) {
        self.items.push(CheckItem {
            id: id.into(),
            anchor: anchor.into(),
            status: ItemStatus::Skipped,
            value: json!({ "reason": reason }),
            runtime_ms: 0,
        });
    }

    pub fn cap_exceeded_count(&self) -> usize {
        self.items.iter().filter(|i| i.status == ItemStatus::CapExceeded).count()
    }

    pub fn finish(self) -> CheckReport {
        let passed = self.items.iter().all(|i| i.status != ItemStatus::Fail);
        CheckReport {
            schema: CHECK_REPORT_SCHEMA.into(),
            suite: self.suite,
            version: env!("CARGO_PKG_VERSION").into(),
            params: self.params,
            seed: self.seed,
            items: self.items,
            passed,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn statuses_and_passed_flag() {
        let mut b = SuiteBuilder::new("demo", 5);
        b.param("p", 3);
        b.item("good", "plumbing", || Ok(Outcome::new(true, json!(1))));
        b.item("capped", "plumbing", || Err(Error::cap(10, "demo scan")));
        b.skip("skipped", "plumbing", "no input");
        let report = b.finish();
        assert!(report.passed);
        assert_eq!(report.items[1].status, ItemStatus::CapExceeded);
        assert_eq!(report.items[1].value["cap"], 10);

        let mut b = SuiteBuilder::new("demo", 5);
        b.item("bad", "plumbing", || Ok(Outcome::new(false, Value::Null)));
        assert!(!b.finish().passed);
    }

    #[test]
    fn json_round_trip() {
        let mut b = SuiteBuilder::new("demo", 5);
        b.item("good", "plumbing", || Ok(Outcome::new(true, json!({"n": 4}))));
        let report = b.finish();
        let parsed: CheckReport = serde_json::from_str(&report.to_json_string()).unwrap();
        assert_eq!(parsed.suite, "demo");
        assert_eq!(parsed.items[0].value["n"], 4);
        assert!(report.render_text().contains("PASS good"));
    }
}
