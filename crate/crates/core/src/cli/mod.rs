//! Front end shared by the `econamp` binary and its tests.
//!
//! Each `cmd_*` function returns the text destined for standard output, so
//! the binary only has to print it or map a [`CliError`] to an exit code.

mod commands;
mod config;
mod format;
mod series;

use std::path::PathBuf;

use thiserror::Error;

pub use commands::{cmd_analyze, cmd_cascade, cmd_fit, cmd_simulate, points_path, RunReport};
pub use config::{parse_config, SimConfig};
pub use format::{fmt_full, fmt_sig6};
pub use series::{read_columns, read_series};

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_COMPUTE: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),

    #[error("cannot access {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{}parse error: {message}", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
    Parse { line: Option<u64>, message: String },

    #[error(transparent)]
    Compute(#[from] crate::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => EXIT_USAGE,
            CliError::Parse { .. } => EXIT_PARSE,
            CliError::Compute(_) => EXIT_COMPUTE,
        }
    }

    pub(crate) fn parse(line: Option<u64>, message: impl Into<String>) -> Self {
        CliError::Parse {
            line,
            message: message.into(),
        }
    }
}
