use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Hausdorff-type quantities are only defined on nonempty sets.
    #[error("{0} is undefined on the empty set")]
    EmptySet(&'static str),

    #[error("objects live over different ground spaces")]
    SpaceMismatch,

    #[error("set kind does not match the ground space: {0}")]
    KindMismatch(&'static str),

    #[error("invalid metric space: {0}")]
    InvalidSpace(String),

    #[error("invalid fuzzy set: {0}")]
    InvalidFuzzySet(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A construction whose guarantee is a theorem produced a result that
    /// violates it. Always a bug or a numerical breakdown.
    #[error("postcondition violated: {0}")]
    Postcondition(String),

    #[error("{0}")]
    Domain(String),
}
