use serde_json::{json, Value};

/// A failure reported on stderr as `{"error": code, "detail": ...}`.
#[derive(Debug)]
pub struct CliError {
    code: String,
    detail: Value,
    usage: bool,
}

impl CliError {
    pub fn new(code: &str, detail: impl Into<Value>) -> Self {
        CliError { code: code.to_string(), detail: detail.into(), usage: false }
    }

    pub fn usage(detail: &str) -> Self {
        CliError { code: "Usage".to_string(), detail: detail.into(), usage: true }
    }

    pub fn exit_code(&self) -> u8 {
        if self.usage {
            2
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        json!({"error": self.code, "detail": self.detail}).to_string()
    }
}

macro_rules! from_domain {
    ($($t:ty),* $(,)?) => {
        $(impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::new(e.code(), e.to_string())
            }
        })*
    };
}

from_domain!(
    aulayout::GraphError,
    aulayout::ExtensionError,
    aulayout::RelError,
    aulayout::FloorplanError,
    aulayout::RealizeError,
    aulayout::EnumerateError,
);
