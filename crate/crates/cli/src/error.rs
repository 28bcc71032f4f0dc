//! CLI error type with the exit-code convention: 1 for invalid input
//! (parse, schema, validation), 2 for exceeded size limits. Errors are
//! printed machine-readably on stderr.

use thiserror::Error;
use wlc_core::algebra::AlgebraError;
use wlc_core::classify::ClassifyError;
use wlc_core::principles::PrincipleError;
use wlc_core::symmetry::SymmetryError;
use wlc_core::{GameError, SizeError};

#[derive(Error, Debug)]
pub enum CliError {
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("schema error at {pointer}: {message}")]
    Schema { pointer: String, message: String },
    #[error("validation error: {0}")]
    Validation(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Io(_) => "io",
            CliError::Schema { .. } => "schema",
            CliError::Validation(_) => "validation",
            CliError::Parse(_) => "parse",
            CliError::SizeLimit(_) => "size-limit",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::SizeLimit(_) => 2,
            _ => 1,
        }
    }
}

impl From<GameError> for CliError {
    fn from(e: GameError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::Parse { .. } => CliError::Parse(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<SizeError> for CliError {
    fn from(e: SizeError) -> Self {
        CliError::SizeLimit(e.to_string())
    }
}

impl From<SymmetryError> for CliError {
    fn from(e: SymmetryError) -> Self {
        match e {
            SymmetryError::SizeLimit(s) => s.into(),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<PrincipleError> for CliError {
    fn from(e: PrincipleError) -> Self {
        match e {
            PrincipleError::SizeLimit(s) => s.into(),
            PrincipleError::Parse { .. } => CliError::Parse(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<ClassifyError> for CliError {
    fn from(e: ClassifyError) -> Self {
        match e {
            ClassifyError::SizeLimit(s) => s.into(),
            other => CliError::Validation(other.to_string()),
        }
    }
}
