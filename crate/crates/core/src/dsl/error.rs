use thiserror::Error;

use crate::groupoid::{FunctorError, GroupError, GroupoidError};

use super::Kind;

/// The core check that rejected a declaration.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
    #[error(transparent)]
    Functor(#[from] FunctorError),
    #[error("{0}")]
    Incomplete(String),
}

/// Every variant carries a 1-based line and column inside the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{col}: syntax error: expected {expected}, found {found}")]
    Syntax { line: usize, col: usize, expected: String, found: String },
    #[error("{line}:{col}: unknown {what} `{name}`")]
    UnknownReference { name: String, what: &'static str, line: usize, col: usize },
    #[error("{line}:{col}: duplicate {what} `{name}`")]
    DuplicateName { name: String, what: &'static str, line: usize, col: usize },
    #[error("{line}:{col}: `{name}` is invalid: {source}")]
    Validation {
        name: String,
        line: usize,
        col: usize,
        #[source]
        source: Box<ValidationError>,
    },
    #[error("{line}:{col}: {what} exceeds the limit of {limit}")]
    TooLarge { what: String, limit: usize, line: usize, col: usize },
}

impl ParseError {
    pub fn line(&self) -> usize {
        match self {
            ParseError::Syntax { line, .. }
            | ParseError::UnknownReference { line, .. }
            | ParseError::DuplicateName { line, .. }
            | ParseError::Validation { line, .. }
            | ParseError::TooLarge { line, .. } => *line,
        }
    }

    pub fn col(&self) -> usize {
        match self {
            ParseError::Syntax { col, .. }
            | ParseError::UnknownReference { col, .. }
            | ParseError::DuplicateName { col, .. }
            | ParseError::Validation { col, .. }
            | ParseError::TooLarge { col, .. } => *col,
        }
    }

    /// Short machine-friendly tag.
    pub fn kind(&self) -> &'static str {
        match self {
            ParseError::Syntax { .. } => "syntax",
            ParseError::UnknownReference { .. } => "unknown-reference",
            ParseError::DuplicateName { .. } => "duplicate-name",
            ParseError::Validation { .. } => "validation",
            ParseError::TooLarge { .. } => "too-large",
        }
    }
}

/// Failures of the in-memory document API.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocumentError {
    #[error("unknown {kind} `{name}`")]
    UnknownReference { name: String, kind: Kind },
    #[error("duplicate {kind} `{name}`")]
    DuplicateName { name: String, kind: Kind },
    #[error("`{0}` cannot be written in the text format")]
    UnprintableName(String),
    #[error("groupoid `{0}` has no objects; declare it as `discrete(0)` instead")]
    EmptyGroupoid(String),
    #[error("functor endpoints do not match `{dom}` and `{cod}`")]
    EndpointMismatch { dom: String, cod: String },
    #[error("{what} exceeds the limit of {limit}")]
    TooLarge { what: String, limit: usize },
    #[error("builtin `{name}` is invalid: {source}")]
    Builtin {
        name: String,
        #[source]
        source: ValidationError,
    },
}
