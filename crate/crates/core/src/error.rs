//! Error type shared by all operations.
//!
//! Every precondition violation maps to a dedicated variant so callers (and
//! the CLI exit-code mapping) can distinguish bad input shapes from domain
//! errors on otherwise well-formed data.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix order {0} is outside the supported range 2..=8")]
    UnsupportedOrder(usize),

    #[error("expected {expected} entries for order {order}, found {found}")]
    EntryCount {
        order: usize,
        expected: usize,
        found: usize,
    },

    #[error("matrix entries must be finite")]
    NonFiniteEntry,

    #[error("matrix must have order {expected}, found {found}")]
    OrderMismatch { expected: usize, found: usize },

    #[error("matrix is not Hermitian (residual {residual:.3e})")]
    NotHermitian { residual: f64 },

    #[error("matrix is not unitary (residual {residual:.3e})")]
    NotUnitary { residual: f64 },

    #[error("scaling parameter {0} is outside [0, 1]")]
    EpsilonOutOfRange(f64),

    #[error("embedding order {found} must be at least {minimum}")]
    EmbeddingTooSmall { found: usize, minimum: usize },

    #[error("trace must vanish for this condition (|trace| = {0:.3e})")]
    TraceNotZero(f64),

    #[error("matrix must be nonzero for this operation")]
    ZeroMatrix,

    #[error("input does not have the required shape: {0}")]
    ShapeMismatch(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unknown reproduction case `{0}`")]
    UnknownCase(String),
}

pub type Result<T> = std::result::Result<T, Error>;
