//! Command implementations behind the `probdel` binary.
//!
//! Every command produces an [`OutputRecord`]; `main` decides where it goes.

pub mod args;
pub mod commands;
pub mod record;

use thiserror::Error;

pub use args::Cli;
pub use record::OutputRecord;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Domain(#[from] probdel::Error),

    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Domain(_) => 2,
            CliError::Io { .. } => 3,
        }
    }
}

/// A command's output plus the name of the first failed check, if any.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub record: OutputRecord,
    pub failed_check: Option<String>,
}

impl From<OutputRecord> for Outcome {
    fn from(record: OutputRecord) -> Self {
        Self {
            record,
            failed_check: None,
        }
    }
}

pub const EXIT_VERIFICATION_FAILED: i32 = 1;
