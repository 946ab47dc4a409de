//! Machine-readable outcomes of theorem checks.

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Vacuous,
}

/// One verification record. A `fail` always carries a witness that re-checks
/// independently of the procedure that produced it.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub theorem: String,
    pub instance: String,
    pub outcome: Outcome,
    pub witness: Option<Value>,
}

impl VerificationReport {
    pub fn pass(theorem: &str) -> Self {
        VerificationReport {
            theorem: theorem.into(),
            instance: String::new(),
            outcome: Outcome::Pass,
            witness: None,
        }
    }

    pub fn fail(theorem: &str, witness: Value) -> Self {
        VerificationReport {
            theorem: theorem.into(),
            instance: String::new(),
            outcome: Outcome::Fail,
            witness: Some(witness),
        }
    }

    pub fn vacuous(theorem: &str, note: Value) -> Self {
        VerificationReport {
            theorem: theorem.into(),
            instance: String::new(),
            outcome: Outcome::Vacuous,
            witness: Some(note),
        }
    }

    pub fn with_instance(mut self, instance: &str) -> Self {
        self.instance = instance.into();
        self
    }

    pub fn passed(&self) -> bool {
        self.outcome != Outcome::Fail
    }

    /// One JSON line, schema `{"theorem", "instance", "outcome", "witness"}`.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}
