use std::path::PathBuf;

use aperylab_core::Error as CoreError;

pub type Result<T, E = CliError> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),

    #[error(transparent)]
    Core(#[from] CoreError),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    /// 1 for a failed verification, 2 for bad input, 3 when the precision
    /// budget ran out.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) => match e {
                CoreError::PrecisionExhausted(_)
                | CoreError::NonConvergence { .. }
                | CoreError::BernoulliDivergence => 3,
                CoreError::Verification(_)
                | CoreError::Integrality { .. }
                | CoreError::Singular => 1,
                _ => 2,
            },
            CliError::Input(_) | CliError::Io { .. } | CliError::Json(_) => 2,
        }
    }
}
