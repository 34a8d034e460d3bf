//! Session-file front end for `fibercone-core`.

pub mod backend;
pub mod commands;
pub mod report;
pub mod session;
pub mod suite;

use fibercone_core::invariants::InvError;
use fibercone_core::CalcError;
use thiserror::Error;

use report::Report;
use session::SessionError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Session(#[from] SessionError),
    #[error(transparent)]
    Inv(#[from] InvError),
    #[error("unknown ideal `{0}`")]
    UnknownIdeal(String),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
}

impl From<CalcError> for CliError {
    fn from(e: CalcError) -> Self {
        CliError::Inv(e.into())
    }
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Session(e) => e.kind(),
            CliError::Inv(e) => e.kind(),
            CliError::UnknownIdeal(_) => "UnknownIdeal",
            CliError::Usage(_) => "Usage",
            CliError::Io(_) => "Io",
        }
    }

    pub fn is_precision_exhausted(&self) -> bool {
        matches!(self, CliError::Inv(e) if e.is_precision_exhausted())
    }

    /// `error.kind` and `error.detail` lines.
    pub fn to_report(&self) -> Report {
        let mut r = Report::new();
        r.push("error.kind", self.kind());
        r.push("error.detail", self);
        r
    }
}

/// Exit status for a finished command: 0 on success, 1 when an assertion
/// failed, 2 on input or computation errors.
pub fn exit_code(result: &Result<Report, CliError>) -> i32 {
    match result {
        Ok(r) if r.failed => 1,
        Ok(_) => 0,
        Err(_) => 2,
    }
}
