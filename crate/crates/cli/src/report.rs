//! The single machine-readable document every command prints.

use hypercal_core::Error;
use serde::Serialize;
use serde_json::{json, Value};

pub const VERSION: &str = "hypercal/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Check { name: name.into(), verdict: Verdict::Pass, witness: None }
    }

    pub fn fail(name: impl Into<String>, witness: Value) -> Self {
        Check { name: name.into(), verdict: Verdict::Fail, witness: Some(witness) }
    }

    pub fn from_bool(name: impl Into<String>, ok: bool, witness: impl FnOnce() -> Value) -> Self {
        if ok {
            Check::pass(name)
        } else {
            Check::fail(name, witness())
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ModelId {
    pub name: String,
    pub kind: String,
    pub sha256: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub version: &'static str,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model: Option<ModelId>,
    pub checks: Vec<Check>,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<Value>,
    /// Wall-clock data, present only on request so default output is
    /// byte-identical across runs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Value>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            version: VERSION,
            command: command.into(),
            model: None,
            checks: Vec::new(),
            result: Value::Null,
            error: None,
            timings: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.error.is_none() && self.checks.iter().all(Check::passed)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.command, self.model.as_ref().map_or("-", |m| m.name.as_str()));
        for c in &self.checks {
            let verdict = if c.passed() { "pass" } else { "FAIL" };
            out.push_str(&format!("  {verdict:4} {}", c.name));
            if let Some(w) = &c.witness {
                out.push_str(&format!("  {w}"));
            }
            out.push('\n');
        }
        if let Value::Object(map) = &self.result {
            for (k, v) in map {
                out.push_str(&format!("  {k}: {v}\n"));
            }
        }
        if let Some(e) = &self.error {
            out.push_str(&format!("  error {e}\n"));
        }
        out
    }
}

/// Structured witness for a core error; the message is always included.
pub fn witness(e: &Error) -> Value {
    let detail = match e {
        Error::Jacobi { i, j, k } => json!({"i": i, "j": j, "k": k}),
        Error::DSquared { degree, blade } => json!({"degree": degree, "blade": blade}),
        Error::NotIntegrable { structure, i, j } => json!({"structure": structure, "i": i, "j": j}),
        Error::AffineIdentity { identity, i, j } => json!({"identity": identity, "i": i, "j": j}),
        Error::MetricNotPositive { minor } => json!({"minor": minor}),
        Error::QuaternionicIdentity(name) => json!({"identity": name}),
        Error::HktCriteriaDisagree { del, d_plus } => json!({"del": del, "d_plus": d_plus}),
        Error::ClebschGordan { degree, expected, found } => {
            json!({"degree": degree, "expected": expected, "found": found})
        }
        _ => json!({}),
    };
    let mut map = detail.as_object().cloned().unwrap_or_default();
    map.insert("message".into(), Value::from(e.to_string()));
    Value::Object(map)
}
