use thiserror::Error;

/// Errors raised by tree, urn, spectral, and Monte Carlo operations.
///
/// Codec failures have their own type, [`crate::codec::CodecError`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("duplicate key {0}")]
    DuplicateKey(u64),

    /// Profiles (and everything built on them) are undefined for n = 0.
    #[error("operation undefined on an empty tree")]
    EmptyTree,

    #[error("gap index {index} out of range: tree has {available} gaps")]
    GapIndexOutOfRange { index: u64, available: u64 },

    #[error("cannot draw color {0}: no balls of that color in the urn")]
    AbsentColor(usize),

    #[error("drawing color {color} would drive the count of color {affected} negative")]
    TenabilityViolation { color: usize, affected: usize },

    #[error("numeric failure: {0}")]
    NumericFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
