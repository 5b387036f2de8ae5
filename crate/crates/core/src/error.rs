use std::fmt;

use thiserror::Error;

use crate::io::SourceSpan;

/// Errors produced by the net, CCS, transformation and encoding layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input: unknown identifiers, inconsistent structures.
    #[error("invalid input: {0}")]
    Input(String),

    /// An operation was called on a value outside its domain.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Input uses a construct this toolkit deliberately does not handle.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// State exploration hit the configured cap.
    #[error(
        "state limit of {limit} exceeded ({explored} states explored, {frontier} still queued)"
    )]
    ResourceLimit {
        limit: usize,
        explored: usize,
        frontier: usize,
    },

    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// A diagnostic from one of the textual front ends. Always carries a span.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub message: String,
    pub span: SourceSpan,
}

impl ParseError {
    pub fn new(message: impl Into<String>, span: SourceSpan) -> Self {
        Self {
            message: message.into(),
            span,
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}, column {}: {}",
            self.span.line, self.span.column, self.message
        )
    }
}
