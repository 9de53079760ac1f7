use std::io;
use std::path::PathBuf;

use depthscope::DepthError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{file}: line {line}: {msg}")]
    Parse { file: String, line: u64, msg: String },
    #[error("{}: {err}", path.display())]
    Io { path: PathBuf, err: io::Error },
    #[error("{0}")]
    Depth(#[from] DepthError),
    #[error("{0}")]
    Degenerate(String),
}

impl CliError {
    /// 2 for bad input, 3 when the data itself is degenerate.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Degenerate(_)
            | CliError::Depth(
                DepthError::GeneralPosition(_)
                | DepthError::DegenerateProjection
                | DepthError::SampleTooSmall(_)
                | DepthError::NotPositivelySpanning
                | DepthError::EmptyFamily
                | DepthError::StaleFragment
                | DepthError::DegenerateFragment
                | DepthError::AlphaExceedsMaximalDepth { .. }
                | DepthError::ContaminationRetriesExhausted(_),
            ) => 3,
            _ => 2,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
