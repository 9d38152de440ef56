use std::path::{Path, PathBuf};

use thiserror::Error;

/// Exit status for a successful run.
pub const EXIT_OK: i32 = 0;
/// `verify` ran but the closed form missed the tolerance.
pub const EXIT_VERIFY_FAILED: i32 = 1;
/// Malformed input: config schema, matrix files, argument ranges.
pub const EXIT_SCHEMA: i32 = 2;
/// A series did not converge under the truncation policy.
pub const EXIT_DIVERGENCE: i32 = 3;
/// Any other numerical or I/O failure.
pub const EXIT_OTHER: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input at `{path}`: {message}")]
    Schema { path: String, message: String },

    #[error("{0}")]
    Usage(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed CSV: {0}")]
    Csv(String),

    #[error(transparent)]
    Numerical(#[from] nabla_dpml::Error),
}

impl CliError {
    pub fn schema(path: &str, message: impl Into<String>) -> Self {
        CliError::Schema {
            path: path.to_string(),
            message: message.into(),
        }
    }

    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    pub fn exit_code(&self) -> i32 {
        use nabla_dpml::Error as E;
        match self {
            CliError::Schema { .. } | CliError::Usage(_) => EXIT_SCHEMA,
            CliError::Numerical(E::Divergence { .. }) => EXIT_DIVERGENCE,
            // input checks in the library that the config reader did not catch
            CliError::Numerical(E::InvalidParameter { .. } | E::DimensionMismatch { .. }) => EXIT_SCHEMA,
            CliError::Numerical(_) | CliError::Io { .. } | CliError::Csv(_) => EXIT_OTHER,
        }
    }
}
