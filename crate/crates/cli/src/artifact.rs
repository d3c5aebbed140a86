use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Version tag of the artifact layout described in `docs/artifact.schema.json`.
pub const SCHEMA: &str = "ringel-artifact/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    /// A known-degenerate or Lie-level situation; not a failure.
    Flagged,
    Exploratory,
}

/// The single output of every command. No timings, so reruns are byte-identical.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Artifact {
    pub schema: String,
    pub command: String,
    pub field: String,
    pub params: Value,
    pub result: Value,
    pub verdict: Verdict,
    pub warnings: Vec<String>,
}

impl Artifact {
    pub fn new(command: &str, field: String, params: Value, result: Value, verdict: Verdict) -> Artifact {
        Artifact { schema: SCHEMA.to_string(), command: command.to_string(), field, params, result, verdict, warnings: Vec::new() }
    }

    pub fn warn(mut self, warnings: Vec<String>) -> Artifact {
        self.warnings.extend(warnings);
        self
    }
}
