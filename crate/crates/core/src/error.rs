//! Crate-wide error type.

use thiserror::Error;

/// Error type shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A tensor would exceed the hard entry cap.
    #[error("tensor capacity exceeded: {entries} entries (cap {cap})")]
    CapacityExceeded { entries: u128, cap: usize },

    /// Shapes of operands do not line up.
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    /// A contraction plan violates the label rules.
    #[error("invalid contraction plan: {0}")]
    InvalidPlan(String),

    /// A constructor or command received an out-of-range parameter.
    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    /// The requested quantity is not defined for the given state.
    #[error("inapplicable: {0}")]
    Inapplicable(String),

    /// A state file could not be parsed or fails its structural checks.
    #[error("state file error: {0}")]
    Format(String),

    /// A state failed the normalization policy in force.
    #[error("state is not normalized: norm = {norm}")]
    NotNormalized { norm: f64 },

    /// Sampling could not satisfy its constraints (e.g. condition cap).
    #[error("sampling failed: {0}")]
    Sampling(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
