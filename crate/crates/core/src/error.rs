use thiserror::Error;

use crate::coeff::FieldMode;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("field mode mismatch: {left} vs {right}")]
    FieldMismatch { left: FieldMode, right: FieldMode },
    #[error("imaginary coefficient in rational field mode")]
    ImaginaryInRationalMode,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
}

/// Syntax error with a 1-based column into the source text.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at column {column}: {message}")]
pub struct ParseError {
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn at(offset: usize, message: impl Into<String>) -> Self {
        ParseError { column: offset + 1, message: message.into() }
    }
}
