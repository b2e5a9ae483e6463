use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] dwta_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {msg}")]
    Parse {
        path: PathBuf,
        line: usize,
        msg: String,
    },
    #[error("row {0}: every sample is empty, densification is undefined")]
    AllEmptyRow(usize),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// 3 for data whose densification is undefined, 1 for IO failures,
    /// 2 for every other validation error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Core(dwta_core::Error::AllEmpty | dwta_core::Error::AllEmptyPair)
            | Error::AllEmptyRow(_) => 3,
            Error::Io { .. } => 1,
            _ => 2,
        }
    }
}
