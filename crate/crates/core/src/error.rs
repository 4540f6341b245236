use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("illegal move")]
    IllegalMove,

    #[error("invalid game spec: {0}")]
    InvalidSpec(String),

    #[error("invalid position: {0}")]
    InvalidPosition(String),

    #[error("box has zero volume")]
    EmptyBox,

    #[error("box of {0} cells is too large to classify")]
    BoxTooLarge(u128),

    #[error("expected a 2-pile grid, got dimension {0}")]
    NotTwoDimensional(usize),

    #[error("stride {0} is not a power of two")]
    NotPowerOfTwo(u64),

    #[error("stride must be at least 1")]
    ZeroStride,

    #[error("expected {expected} entries, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("insufficient data: needed {needed} entries, only {available} available")]
    InsufficientData { needed: usize, available: usize },

    #[error("basis matrix is singular")]
    SingularBasis,

    #[error("not representable")]
    NotRepresentable,

    #[error("malformed grid file: {0}")]
    MalformedGrid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
