// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Errors raised by constructors, oracles and file parsers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Operands belong to different fields, or an element is not reduced
    /// under the context it is used with.
    #[error("context mismatch: {0}")]
    ContextMismatch(String),

    /// The input lies outside the domain of the operation (inverse of zero,
    /// entropy argument outside [0, 1], ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A parameter violates a constructor precondition.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Matrices or words of incompatible shape.
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    /// A generator matrix does not have full row rank.
    #[error("rank-deficient generator: rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },

    /// Exact enumeration (or an exact solver) would exceed the configured budget.
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    /// A randomized search gave up after its retry cap.
    #[error("retries exhausted after {attempts} attempts: {transcript}")]
    RetriesExhausted { attempts: usize, transcript: String },

    /// Distance of a zero-dimensional code, or a report that cannot certify
    /// the requested property.
    #[error("undefined: {0}")]
    Undefined(String),

    /// Malformed serialized input.
    #[error("parse error: {0}")]
    Parse(String),

    /// A self-check found a violated invariant.
    #[error("check failed: {0}")]
    CheckFailed(String),

    /// Filesystem failure.
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Machine-parsable category used for CLI exit codes.
    pub fn category(&self) -> ErrorCategory {
        match self {
            Error::Parse(_) => ErrorCategory::Usage,
            Error::BudgetExceeded(_) | Error::RetriesExhausted { .. } => ErrorCategory::Budget,
            Error::Io(_) | Error::CheckFailed(_) => ErrorCategory::Internal,
            _ => ErrorCategory::Precondition,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCategory {
    Usage,
    Precondition,
    Budget,
    Internal,
}

impl ErrorCategory {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorCategory::Usage => 2,
            ErrorCategory::Precondition => 3,
            ErrorCategory::Budget => 4,
            ErrorCategory::Internal => 5,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ErrorCategory::Usage => "usage",
            ErrorCategory::Precondition => "precondition",
            ErrorCategory::Budget => "budget",
            ErrorCategory::Internal => "internal",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
