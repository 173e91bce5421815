use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

/// One named check: a residual against a tolerance, or an exact predicate.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Check {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    pub pass: bool,
}

impl Check {
    pub fn residual(name: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Self { name: name.into(), residual: Some(residual), exact: None, tolerance: Some(tolerance), pass: residual < tolerance }
    }

    /// Passes when `lo <= value <= hi`; the residual field carries the value.
    pub fn within(name: impl Into<String>, value: f64, lo: f64, hi: f64) -> Self {
        Self { name: name.into(), residual: Some(value), exact: None, tolerance: None, pass: (lo..=hi).contains(&value) }
    }

    pub fn exact(name: impl Into<String>, ok: bool) -> Self {
        Self { name: name.into(), residual: None, exact: Some(ok), tolerance: None, pass: ok }
    }

    /// A check that could not be evaluated.
    pub fn failed(name: impl Into<String>, why: &str) -> Self {
        Self { name: format!("{}: {why}", name.into()), residual: None, exact: Some(false), tolerance: None, pass: false }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct VerificationReport {
    pub suite: String,
    pub pass: bool,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub details: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl VerificationReport {
    pub fn new(suite: &str, checks: Vec<Check>, details: BTreeMap<String, Value>) -> Self {
        let pass = !checks.is_empty() && checks.iter().all(|c| c.pass);
        Self { suite: suite.to_string(), pass, checks, details, timing_ms: None }
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}
