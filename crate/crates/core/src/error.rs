use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("duplicate vertex label `{0}`")]
    DuplicateVertex(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("loop at vertex `{0}`")]
    Loop(String),
    #[error("oriented cycle through vertex `{0}`")]
    Cycle(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("form has non-unit diagonal entry at index {0}")]
    NonUnitDiagonal(usize),
    #[error("root search reached the coordinate cap {cap} with a nonempty frontier")]
    Frontier { cap: i64 },
    #[error("form is not weakly positive: q({0:?}) <= 0")]
    NotWeaklyPositive(Vec<i64>),
    #[error("root set is not closed under negation")]
    IncompleteRoots,
    #[error("{0:?} is not reachable by the reflection schedule")]
    NotReflectable(Vec<i64>),
    #[error("representation has a summand that is not one of the given bricks (dimension {0:?} left over)")]
    NonBrick(Vec<i64>),
    #[error("quiver is not of Dynkin type")]
    NotDynkin,
    #[error("unknown module label `{0}`")]
    UnknownLabel(String),
    #[error("not a tilting module: {0}")]
    NotTilting(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
