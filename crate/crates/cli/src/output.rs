use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;

pub const SCHEMA: &str = "signsum/1";

/// Top-level JSON document printed under `--json`.
///
/// Printed through `serde_json::Value`, so every object has sorted keys and
/// parsing then re-printing the output reproduces it byte for byte.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutputEnvelope {
    pub schema: String,
    pub command: String,
    pub input: String,
    pub engine: String,
    pub exact: bool,
    pub result: Value,
}

impl OutputEnvelope {
    pub fn new(command: &str, input: String, engine: &str, exact: bool, result: Value) -> Self {
        OutputEnvelope {
            schema: SCHEMA.to_string(),
            command: command.to_string(),
            input,
            engine: engine.to_string(),
            exact,
            result,
        }
    }

    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("envelope is plain data");
        serde_json::to_string_pretty(&value).expect("value serializes")
    }
}

/// What a command produced: the envelope, its human-readable rendering, and
/// an optional failure that should set the exit status after printing.
pub struct Report {
    pub envelope: OutputEnvelope,
    pub text: String,
    pub failure: Option<CliError>,
}

impl Report {
    pub fn ok(envelope: OutputEnvelope, text: String) -> Self {
        Report {
            envelope,
            text,
            failure: None,
        }
    }
}
