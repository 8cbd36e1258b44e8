//! Command-line front end for the Kauffman monoid toolkit.

pub mod commands;
pub mod formats;
pub mod verify;

use serde_json::{json, Value};

pub use commands::{run, Cli, Command};

/// Outcome class of a command, mapped onto the process exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// A verification or certificate check failed.
    Failed,
    /// Bad arguments or unparsable input.
    Usage,
    /// Rewriting fuel or a search budget ran out.
    Guard,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Failed => 1,
            Status::Usage => 2,
            Status::Guard => 3,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CommandResult {
    pub command: &'static str,
    pub status: Status,
    /// Human-readable output.
    pub text: String,
    pub payload: Value,
    pub diagnostics: Vec<String>,
}

impl CommandResult {
    pub fn ok(command: &'static str, text: String, payload: Value) -> Self {
        CommandResult {
            command,
            status: Status::Ok,
            text,
            payload,
            diagnostics: Vec::new(),
        }
    }

    pub fn error(command: &'static str, status: Status, message: String) -> Self {
        CommandResult {
            command,
            status,
            text: String::new(),
            payload: Value::Null,
            diagnostics: vec![message],
        }
    }

    pub fn with_diagnostic(mut self, note: impl Into<String>) -> Self {
        self.diagnostics.push(note.into());
        self
    }

    pub fn exit_code(&self) -> u8 {
        self.status.exit_code()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema": formats::schema(self.command),
            "status": if self.status == Status::Ok { "ok" } else { "error" },
            "exit_code": self.exit_code(),
            "payload": self.payload,
            "diagnostics": self.diagnostics,
        })
    }
}
