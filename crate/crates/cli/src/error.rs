use thiserror::Error;

/// Failures surfaced by the command layer. Each maps to a process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("path file {file}: {msg}")]
    Parse { file: String, msg: String },

    #[error(transparent)]
    Numeric(#[from] abplates::Error),

    /// Rows were produced but some did not meet the tolerance.
    #[error("{count} of {total} rows did not converge (rerun with --allow-partial to keep them)")]
    Partial { count: usize, total: usize },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    /// 2 for domain and configuration errors, 3 for convergence failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Numeric(abplates::Error::SeriesNotConverged { .. })
            | CliError::Numeric(abplates::Error::QuadratureNotConverged { .. })
            | CliError::Partial { .. } => 3,
            _ => 2,
        }
    }
}

pub(crate) fn config(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}
