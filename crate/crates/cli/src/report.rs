use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

/// Names of the sections `verify` always emits.
pub const SECTION_NAMES: [&str; 8] = [
    "eigenequations",
    "identities",
    "hv_lhv",
    "hv_nchv",
    "mermin",
    "table1",
    "swap",
    "contextuality",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn is_pass(self) -> bool {
        self == Status::Pass
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Section {
    pub status: Status,
    pub metrics: BTreeMap<String, f64>,
    pub details: serde_json::Value,
}

impl Section {
    pub fn new(ok: bool, metrics: impl IntoIterator<Item = (&'static str, f64)>, details: serde_json::Value) -> Self {
        Section {
            status: Status::from_bool(ok),
            metrics: metrics.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
            details,
        }
    }

    pub fn metric(&self, name: &str) -> Option<f64> {
        self.metrics.get(name).copied()
    }
}

/// Section order in JSON is alphabetical; `status` is derived, never set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub tool_version: String,
    pub timestamp: String,
    pub tolerance: f64,
    pub status: Status,
    pub sections: BTreeMap<String, Section>,
}

impl VerificationReport {
    pub fn new(timestamp: String, tolerance: f64, sections: BTreeMap<String, Section>) -> Self {
        let status = Status::from_bool(sections.values().all(|s| s.status.is_pass()));
        VerificationReport {
            schema_version: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp,
            tolerance,
            status,
            sections,
        }
    }

    pub fn passed(&self) -> bool {
        self.status.is_pass()
    }

    /// Structural checks a consumer can rely on: schema version, every
    /// expected section present, overall status consistent with the
    /// sections, and residual-type metrics nonnegative.
    pub fn validate(&self) -> Result<(), String> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(format!("schema_version {} != {SCHEMA_VERSION}", self.schema_version));
        }
        for name in SECTION_NAMES {
            if !self.sections.contains_key(name) {
                return Err(format!("missing section {name}"));
            }
        }
        let any_fail = self.sections.values().any(|s| !s.status.is_pass());
        if any_fail == self.passed() {
            return Err("overall status disagrees with sections".into());
        }
        for (name, section) in &self.sections {
            for (key, value) in &section.metrics {
                if !value.is_finite() {
                    return Err(format!("{name}.{key} is not finite"));
                }
                let is_error_metric = key.contains("residual") || key.contains("deviation") || key.contains("error");
                if is_error_metric && *value < 0.0 {
                    return Err(format!("{name}.{key} is negative"));
                }
            }
        }
        Ok(())
    }

    /// Aligned one-line-per-section summary.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (name, section) in &self.sections {
            let metrics: Vec<String> = section
                .metrics
                .iter()
                .map(|(k, v)| format!("{k}={}", crate::format::compact(*v)))
                .collect();
            out.push_str(&format!("{name:<15} {:<4}  {}\n", section.status, metrics.join(" ")));
        }
        out.push_str(&format!("overall         {}\n", self.status));
        out
    }
}
