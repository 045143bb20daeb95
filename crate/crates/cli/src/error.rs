use std::fmt;
use std::path::PathBuf;

use thiserror::Error;

/// Invalid configuration text or value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigError {
    key: Option<String>,
    line: Option<usize>,
    message: String,
}

impl ConfigError {
    pub fn invalid(key: &str, message: String) -> Self {
        Self {
            key: Some(key.to_string()),
            line: None,
            message,
        }
    }

    pub fn unknown(key: &str) -> Self {
        Self::invalid(key, "unknown key".into())
    }

    pub fn syntax(line: usize, message: String) -> Self {
        Self {
            key: None,
            line: Some(line),
            message,
        }
    }

    /// The offending key, when the error concerns one.
    pub fn key(&self) -> Option<&str> {
        self.key.as_deref()
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.key, self.line) {
            (Some(k), _) => write!(f, "config key `{k}`: {}", self.message),
            (None, Some(n)) => write!(f, "config line {n}: {}", self.message),
            (None, None) => f.write_str(&self.message),
        }
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("numerical failure: {0}")]
    Numerical(#[from] qcorr_core::Error),
}

impl CliError {
    /// 1 for configuration and I/O problems, 2 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io { .. } => 1,
            CliError::Numerical(_) => 2,
        }
    }
}
