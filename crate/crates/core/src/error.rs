use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by input handling and by constructions whose preconditions fail.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: syntax error: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: duplicate identifier `{id}`")]
    DuplicateIdentifier { line: usize, id: String },
    #[error("line {line}: arrow `{arrow}` references unknown vertex `{vertex}`")]
    DanglingEndpoint { line: usize, arrow: String, vertex: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),

    #[error("invalid field: {0}")]
    BadField(String),
    #[error("invalid scalar: {0}")]
    BadScalar(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("quiver is not of Dynkin type")]
    NotDynkin,
    #[error("quiver has a directed cycle")]
    Cyclic,
    #[error("underlying graph is not a tree")]
    NotATree,
    #[error("no height function exists: {0}")]
    HeightUnsatisfiable(String),

    #[error("relation is not homogeneous: {0}")]
    InhomogeneousRelation(String),
    #[error("automatic stopping is only available for Dynkin input; pass an explicit maximum degree")]
    NeedsExplicitBound,
    #[error("automatic stop did not terminate within degree {0}")]
    AutoStopExceeded(usize),
    #[error("degree {degree} is outside the computed range (up to {bound})")]
    DegreeOutOfRange { degree: usize, bound: usize },

    #[error("no q-value given for arrow `{0}`")]
    MissingQValue(String),
    #[error("q-value for arrow `{0}` is zero")]
    ZeroQValue(String),

    #[error("column {column} is outside the window [0, {max}]")]
    OutOfWindow { column: usize, max: usize },
}
