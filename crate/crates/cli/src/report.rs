use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use ncalg::Error;

pub const SCHEMA_VERSION: u32 = 1;

/// Exit statuses.
pub const OK: i32 = 0;
pub const INTERNAL: i32 = 1;
pub const INPUT_ERROR: i32 = 2;
pub const REFUTED: i32 = 3;
pub const INCONCLUSIVE: i32 = 4;

/// Failure that aborts a command before a full report exists.
#[derive(Debug)]
pub struct Failure {
    pub status: i32,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Failure {
        Failure {
            status: INPUT_ERROR,
            message: message.into(),
        }
    }

    pub fn internal(message: impl Into<String>) -> Failure {
        Failure {
            status: INTERNAL,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let status = match e {
            Error::Decomposition(_) => INTERNAL,
            _ => INPUT_ERROR,
        };
        Failure {
            status,
            message: e.to_string(),
        }
    }
}

pub struct Input {
    pub path: PathBuf,
    pub text: String,
}

impl Input {
    pub fn read(path: &Path) -> Result<Input, Failure> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
        Ok(Input {
            path: path.to_path_buf(),
            text,
        })
    }

    pub fn digest(&self) -> String {
        Sha256::digest(self.text.as_bytes())
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }
}

/// What a command produced: structured result, summary lines and exit status.
pub struct Outcome {
    pub result: Value,
    pub summary: Vec<String>,
    pub status: i32,
}

pub fn assemble(command: &[String], inputs: &[&Input], outcome: &Outcome) -> Value {
    let digests: Vec<Value> = inputs
        .iter()
        .map(|i| json!({"path": i.path.display().to_string(), "sha256": i.digest()}))
        .collect();
    json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": digests,
        "result": outcome.result,
        "summary": outcome.summary.join("\n"),
        "exit_status": outcome.status,
    })
}
