//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum QcaError {
    /// Tensor extents do not line up for the requested operation.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A caller-supplied argument is malformed (repeated axis, empty
    /// partition, invalid bracket, ...).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// An input failed a mathematical precondition (non-Hermitian matrix,
    /// non-finite entries, ...).
    #[error("validation failed: {0}")]
    Validation(String),

    /// The underlying linear-algebra backend reported a failure.
    #[error("linear algebra backend error: {0}")]
    Backend(String),

    /// A configured resource cap (exact-simulation site count, ...) would be
    /// exceeded.
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    /// The numerics collapsed mid-run (trace loss under truncation, ...).
    #[error("numerical failure at step {step}: {message}")]
    NumericalFailure { step: usize, message: String },

    /// A decomposition did not meet its reconstruction contract.
    #[error("decomposition failed: {0}")]
    Decomposition(String),

    /// Input data lies outside the operation's domain (non-positive density
    /// in a log-log fit window, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A parameter scan produced no usable candidate.
    #[error("scan failed: {0}")]
    ScanFailure(String),
}

impl From<ndarray_linalg::error::LinalgError> for QcaError {
    fn from(e: ndarray_linalg::error::LinalgError) -> Self {
        QcaError::Backend(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, QcaError>;
