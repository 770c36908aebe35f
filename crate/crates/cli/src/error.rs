use std::fmt;

use hilbcells::Error;

pub const EXIT_ACCEPTANCE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_ORACLE: i32 = 3;
pub const EXIT_PRECISION: i32 = 4;

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    pub fn acceptance(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_ACCEPTANCE,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::OracleBoundExceeded { .. } => EXIT_ORACLE,
            Error::Precision { .. } | Error::HorizonExhausted(_) => EXIT_PRECISION,
            Error::ContractViolation(_) => EXIT_ACCEPTANCE,
            _ => EXIT_USAGE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::usage(format!("i/o error: {e}"))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        Self::acceptance(format!("serialization failed: {e}"))
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        Self::acceptance(format!("csv output failed: {e}"))
    }
}
