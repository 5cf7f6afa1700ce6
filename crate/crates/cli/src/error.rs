use std::fmt;
use std::io;
use std::path::Path;

use loggen_core::{
    BackendError, BaselineError, ChunkError, CorpusError, EvalError, LexError, PipelineError,
};
use serde_json::json;

/// A domain error: reported as one JSON line on stderr with exit code 1.
#[derive(Debug)]
pub struct CliError {
    pub kind: &'static str,
    pub message: String,
}

impl CliError {
    pub fn new(kind: &'static str, message: impl Into<String>) -> Self {
        CliError {
            kind,
            message: message.into(),
        }
    }

    pub fn io(path: &Path, e: io::Error) -> Self {
        CliError::new("io", format!("{}: {e}", path.display()))
    }

    pub fn to_json_line(&self) -> String {
        json!({ "error": self.kind, "message": self.message }).to_string()
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind, self.message)
    }
}

macro_rules! from_error {
    ($($ty:ty => $kind:literal),* $(,)?) => {
        $(impl From<$ty> for CliError {
            fn from(e: $ty) -> Self {
                CliError::new($kind, e.to_string())
            }
        })*
    };
}

from_error! {
    LexError => "lex",
    ChunkError => "config",
    PipelineError => "pipeline",
    BackendError => "backend",
    CorpusError => "corpus",
    BaselineError => "baseline",
    EvalError => "eval",
    io::Error => "io",
    serde_json::Error => "json",
}
