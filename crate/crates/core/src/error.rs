use thiserror::Error;

/// Errors raised by the library.
///
/// Variants split into caller mistakes (dimension mismatches, violated
/// preconditions) and `Internal`, which signals that an identity the
/// mathematics guarantees did not hold.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("series truncated at degree {cap} cannot resolve degree {needed}")]
    CapTooSmall { cap: usize, needed: usize },

    #[error("configuration does not span the ambient space (rank {rank} < {dim})")]
    NotSpanning { rank: usize, dim: usize },

    #[error("columns {0:?} do not form a basis")]
    NotABasis(Vec<usize>),

    #[error("column {0} is a loop")]
    LoopColumn(usize),

    #[error("column {0} is not a primitive lattice vector")]
    NotPrimitive(usize),

    #[error("zero lies in the convex hull of the configuration")]
    NotPointed,

    #[error("point lies on an affine admissible hyperplane")]
    NotGeneric,

    #[error("point is outside the cone spanned by the configuration")]
    OutsideCone,

    #[error("configuration is not totally unimodular")]
    NotTotallyUnimodular,

    #[error("index {index} out of range for {len} columns")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
