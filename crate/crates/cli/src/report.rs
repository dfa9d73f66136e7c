//! The JSON run report and output plumbing.

use std::fs;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::error::CliError;

/// Machine-readable record of one run. Everything except `elapsed_seconds`
/// is a function of the inputs.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub tool_version: String,
    pub seed: u64,
    pub inputs: Value,
    pub tolerances: Value,
    pub outputs: Value,
    pub elapsed_seconds: f64,
}

impl RunReport {
    pub fn new(command: &str, seed: u64, inputs: Value, tolerances: Value, outputs: Value) -> Self {
        Self {
            command: command.to_string(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            seed,
            inputs,
            tolerances,
            outputs,
            elapsed_seconds: 0.0,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

pub fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("value serializes")
}

/// Writes to `out`, or to standard output.
pub fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
