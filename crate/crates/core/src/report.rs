//! Verification reports and their JSON form.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::cube::{CubeData, CubeFile, CubeFunction};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    /// The inequality has an explicit constant and every sample satisfied it.
    Pass,
    /// A sample violated an inequality with an explicit constant.
    Fail,
    /// The surrogate bound was too weak to decide.
    Inconclusive,
    /// The constant is only known to exist; the observed value is reported.
    Report,
}

impl Verdict {
    /// Pass/fail from a boolean outcome.
    pub fn from_ok(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    /// Process exit code used by the command-line harness.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass | Verdict::Report => 0,
            Verdict::Fail => 1,
            Verdict::Inconclusive => 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
            Verdict::Report => "report",
        }
    }
}

/// Right-hand side of a check: a number, or `"reported-only"` when the
/// constant is existential.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bound {
    Value(f64),
    ReportedOnly,
}

const REPORTED_ONLY: &str = "reported-only";

impl Serialize for Bound {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Bound::Value(v) => s.serialize_f64(*v),
            Bound::ReportedOnly => s.serialize_str(REPORTED_ONLY),
        }
    }
}

impl<'de> Deserialize<'de> for Bound {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match Value::deserialize(d)? {
            Value::Number(n) => n
                .as_f64()
                .map(Bound::Value)
                .ok_or_else(|| serde::de::Error::custom("bound is not a finite number")),
            Value::String(s) if s == REPORTED_ONLY => Ok(Bound::ReportedOnly),
            other => Err(serde::de::Error::custom(format!("invalid bound {other}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerificationReport {
    pub bound: Bound,
    pub check_id: String,
    /// Check-specific diagnostics (margins, per-case values).
    #[serde(default)]
    pub details: BTreeMap<String, Value>,
    pub observed: f64,
    pub params: BTreeMap<String, Value>,
    pub verdict: Verdict,
    pub wall_time_ms: u64,
    #[serde(default)]
    pub witness: Option<CubeFile>,
}

impl VerificationReport {
    pub fn new(check_id: &str) -> Self {
        Self {
            bound: Bound::ReportedOnly,
            check_id: check_id.to_string(),
            details: BTreeMap::new(),
            observed: 0.0,
            params: BTreeMap::new(),
            verdict: Verdict::Report,
            wall_time_ms: 0,
            witness: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl Serialize) -> Self {
        self.params.insert(key.to_string(), json_value(value));
        self
    }

    pub fn detail(&mut self, key: &str, value: impl Serialize) {
        self.details.insert(key.to_string(), json_value(value));
    }

    pub fn set_witness(&mut self, f: &CubeFunction) {
        self.witness = Some(CubeData::Point(f.clone()).to_file());
    }

    pub fn witness_function(&self) -> Option<Result<CubeFunction>> {
        self.witness
            .clone()
            .map(|file| CubeData::from_file(file).map(|d| d.to_function()))
    }

    pub fn timed(mut self, start: Instant) -> Self {
        self.wall_time_ms = start.elapsed().as_millis() as u64;
        self
    }

    /// Full report as key-sorted JSON.
    pub fn to_json(&self) -> String {
        crate::to_sorted_json(self)
    }

    /// The report without `wall_time_ms`; identical inputs give identical bytes.
    pub fn body_json(&self) -> String {
        let mut value = serde_json::to_value(self).expect("reports serialize");
        if let Value::Object(map) = &mut value {
            map.remove("wall_time_ms");
        }
        crate::to_sorted_json(&value)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))
    }
}

fn json_value(value: impl Serialize) -> Value {
    // non-finite floats become null
    serde_json::to_value(value).expect("plain data serializes")
}

/// Replaces a non-finite float by a string so it survives JSON encoding.
pub fn finite_or_label(x: f64) -> Value {
    if x.is_finite() {
        Value::from(x)
    } else {
        Value::from(x.to_string())
    }
}
