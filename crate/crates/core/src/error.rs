use thiserror::Error;

/// Errors raised by the workbench.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("dimension {dim} outside the admissible range {min}..={max}")]
    DimensionOutOfRange { dim: i32, min: i32, max: i32 },

    #[error("chain has dimension {found}, expected {expected}")]
    ChainDimension { expected: i32, found: i32 },

    #[error("chain has {found} coefficients, but there are {expected} faces of dimension {dim}")]
    ChainLength { dim: i32, expected: usize, found: usize },

    #[error("degree vector has {found} entries, expected {expected}")]
    DegreeLength { expected: usize, found: usize },

    #[error("unknown face {0:?}")]
    UnknownFace(Vec<u32>),

    #[error("matrix dimensions do not agree: {0}")]
    Shape(String),

    #[error("generator is not in the lattice spanned by the given basis")]
    NotInLattice,

    #[error("the second complex is not a subcomplex of the first")]
    NotSubcomplex,

    #[error("complex is not a pseudomanifold")]
    NotPseudomanifold,

    #[error("pseudomanifold is not orientable")]
    NotOrientable,

    #[error("invalid pseudomanifold orientation: {0}")]
    InvalidOrientation(String),

    #[error("face subset is not a spanning forest: {0}")]
    NotSpanningForest(String),

    #[error("enumeration refused: {what} would exceed the limit of {limit}")]
    EnumerationLimit { what: &'static str, limit: u128 },

    #[error("integer search region is unbounded along coordinate {0}")]
    UnboundedSearch(usize),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("protocol error: {0}")]
    Protocol(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
