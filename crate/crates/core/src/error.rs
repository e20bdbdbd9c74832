use thiserror::Error;

use crate::factbase::Status;

/// Errors produced by the hvlab library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error{}: {message}", line.map(|l| format!(" at line {l}")).unwrap_or_default())]
    Parse { line: Option<usize>, message: String },

    #[error("unsupported fact file version {found:?} (expected {expected:?})")]
    VersionMismatch { found: String, expected: &'static str },

    #[error("status conflict for {hvector}: stored {existing}, offered {offered}")]
    StatusConflict {
        hvector: String,
        existing: Status,
        offered: Status,
    },

    #[error("plan {plan}: check failed at {step}: {message}")]
    PlanCheckFailure {
        plan: String,
        step: String,
        message: String,
    },

    #[error("plan {plan}: case split at {step} does not cover {missing:?}")]
    IncompleteCover {
        plan: String,
        step: String,
        missing: Vec<String>,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(line: Option<usize>, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
