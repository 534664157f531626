//! What a run prints and what it records about itself.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

/// Exit status of a finished run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    /// Success or a true verdict.
    Ok,
    /// A false verdict, refutation or rejection.
    False,
    /// Bad usage or unreadable input.
    Error,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::False => 1,
            Status::Error => 2,
        }
    }
}

/// A finished run: human-readable text plus the same content as JSON.
#[derive(Clone, Debug)]
pub struct Report {
    pub status: Status,
    pub summary: String,
    pub text: String,
    pub data: Value,
}

impl Report {
    pub fn new(
        status: Status,
        summary: impl Into<String>,
        text: impl Into<String>,
        data: Value,
    ) -> Report {
        Report {
            status,
            summary: summary.into(),
            text: text.into(),
            data,
        }
    }

    pub fn ok(summary: impl Into<String>, text: impl Into<String>, data: Value) -> Report {
        Report::new(Status::Ok, summary, text, data)
    }

    pub fn verdict(
        holds: bool,
        summary: impl Into<String>,
        text: impl Into<String>,
        data: Value,
    ) -> Report {
        let status = if holds { Status::Ok } else { Status::False };
        Report::new(status, summary, text, data)
    }

    pub fn render(&self, command: &str, as_json: bool) -> String {
        if as_json {
            let doc = json!({
                "command": command,
                "status": self.status,
                "summary": self.summary,
                "result": self.data,
            });
            let mut s = serde_json::to_string_pretty(&doc).expect("reports serialize");
            s.push('\n');
            s
        } else {
            let mut s = self.text.clone();
            if !s.is_empty() && !s.ends_with('\n') {
                s.push('\n');
            }
            s
        }
    }
}

/// Input that could not be used; always exit status 2.
#[derive(Clone, Debug)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// For `map_err`.
pub fn bad<E: fmt::Display>(e: E) -> InputError {
    InputError(e.to_string())
}

/// Everything a run depends on, and a digest of what it printed.
///
/// Two runs with equal `subcommand`, `inputs` and `parameters` print the
/// same bytes, so equal manifests mean equal reports.
#[derive(Clone, Debug, Default, Serialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub subcommand: String,
    /// File path to SHA-256 of its contents.
    pub inputs: BTreeMap<String, String>,
    pub parameters: BTreeMap<String, String>,
    pub outcome: Outcome,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Outcome {
    pub exit: u8,
    pub summary: String,
    pub report_sha256: String,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl RunManifest {
    pub fn new(subcommand: &str) -> RunManifest {
        RunManifest {
            tool: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            subcommand: subcommand.into(),
            ..RunManifest::default()
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) {
        self.parameters.insert(key.into(), value.to_string());
    }

    /// Read a file and record its digest.
    pub fn read(&mut self, path: &Path) -> Result<String, InputError> {
        let bytes =
            std::fs::read(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
        self.inputs
            .insert(path.display().to_string(), sha256_hex(&bytes));
        String::from_utf8(bytes)
            .map_err(|_| InputError(format!("{}: not UTF-8 text", path.display())))
    }

    pub fn finish(&mut self, exit: u8, summary: &str, rendered: &str) {
        self.outcome = Outcome {
            exit,
            summary: summary.into(),
            report_sha256: sha256_hex(rendered.as_bytes()),
        };
    }
}
