// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Errors raised by the library. Each variant maps to a validation failure;
/// property failures are reported through result structs instead.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("point is not on the quadric")]
    NotOnQuadric,
    #[error("zero vector does not define a projective point")]
    ZeroPoint,
    #[error("matrix is not in the real form {0}")]
    NotInRealForm(String),
    #[error("inadmissible: {0}")]
    Inadmissible(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
