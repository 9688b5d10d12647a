//! Error type shared by every module of the crate.

use thiserror::Error;

/// Everything that can go wrong while building or transforming the
/// combinatorial objects of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("{v} is not below {w} in the Bruhat order")]
    NotBruhatBelow { v: String, w: String },
    #[error("box ({row}, {col}) is outside the partition")]
    BoxOutside { row: usize, col: usize },
    #[error("lattice path J does not lie above L")]
    PathsNotOrdered,
    #[error("inconsistent rotation system: {0}")]
    Embedding(String),
    #[error("trip starting at {0} does not terminate")]
    TripDiverges(usize),
    #[error("face side ambiguous for the trip starting at {0}")]
    AmbiguousSide(usize),
    #[error("invalid bridge ({a} {b}): {reason}")]
    InvalidBridge { a: usize, b: usize, reason: String },
    #[error("face is not square-eligible: {0}")]
    NotSquareEligible(String),
    #[error("move not applicable: {0}")]
    MoveNotApplicable(String),
    #[error("vertex {0} is frozen")]
    FrozenVertex(usize),
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("label {0} does not occur in the seed")]
    UnknownLabel(String),
    #[error("index sets overlap")]
    Overlap,
    #[error("not a Le-diagram")]
    NotLeDiagram,
    #[error("Le-move pattern does not match at this site")]
    PatternMismatch,
    #[error("index {0} is not in the complement of the positive distinguished subexpression")]
    NotInJ(usize),
    #[error("generalized minor does not project to a Plücker coordinate")]
    ProjectionFailed,
    #[error("parse error: {0}")]
    Parse(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
