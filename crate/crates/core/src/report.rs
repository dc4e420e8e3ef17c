use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Structured outcome of a check, with the first counterexample if any.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub algebra: String,
    pub lambda_labels: Option<Vec<String>>,
    pub depth: Option<usize>,
    pub status: Status,
    pub counterexample: Option<Value>,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    pub fn new(check: &str, algebra: &str) -> Self {
        VerificationReport {
            check: check.to_string(),
            algebra: algebra.to_string(),
            lambda_labels: None,
            depth: None,
            status: Status::Pass,
            counterexample: None,
            elapsed_ms: 0,
        }
    }

    pub fn with_labels<T: ToString>(mut self, labels: &[T]) -> Self {
        self.lambda_labels = Some(labels.iter().map(ToString::to_string).collect());
        self
    }

    pub fn with_depth(mut self, depth: usize) -> Self {
        self.depth = Some(depth);
        self
    }

    /// Records a failure; only the first counterexample is kept.
    pub fn fail(&mut self, counterexample: Value) {
        if self.status == Status::Pass {
            self.status = Status::Fail;
            self.counterexample = Some(counterexample);
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}
