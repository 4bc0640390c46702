use std::io;
use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Clap(#[from] clap::Error),

    #[error("usage error: {0}")]
    Usage(String),

    #[error("incompatible options: {0}")]
    Incompatible(String),

    #[error("cannot write {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error(transparent)]
    Domain(riemann_core::Error),
}

impl From<riemann_core::Error> for CliError {
    fn from(e: riemann_core::Error) -> Self {
        match e {
            riemann_core::Error::Incompatible { .. } => CliError::Incompatible(e.to_string()),
            e => CliError::Domain(e),
        }
    }
}

impl CliError {
    /// 2 usage, 3 incompatible charisma/function, 4 I/O, 5 evaluation.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Clap(e) if !e.use_stderr() => 0,
            CliError::Clap(_) | CliError::Usage(_) => 2,
            CliError::Incompatible(_) => 3,
            CliError::Io { .. } => 4,
            CliError::Domain(_) => 5,
        }
    }
}
