use std::path::{Path, PathBuf};

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("candidate {id} is stale; re-run the analysis")]
    StaleCandidate { id: String },

    #[error("invalid method name `{name}`: {reason}")]
    Naming { name: String, reason: String },

    #[error("fragment cannot be extracted: {0}")]
    Legality(String),

    #[error("rewritten source no longer parses: {0}")]
    Rewrite(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("no analysis available for {0}")]
    NoAnalysis(PathBuf),

    #[error("malformed snapshot log line {line}: {message}")]
    Log { line: usize, message: String },
}

impl Error {
    pub fn io(path: impl AsRef<Path>, source: std::io::Error) -> Self {
        Error::Io { path: path.as_ref().to_path_buf(), source }
    }
}
