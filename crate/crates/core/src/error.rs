use thiserror::Error;

/// Errors raised by the algebraic operations.
///
/// Failed identity checks are not errors; they are reported through
/// [`crate::Report`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("no value assigned to variable `{0}`")]
    MissingAssignment(String),

    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("variable `{0}` is not a coordinate of this chart")]
    ContextMismatch(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("not a Lie algebroid: {0}")]
    InvalidAlgebroid(String),

    #[error("not a Poisson structure: [Lambda,Lambda] has nonzero component {0}")]
    NotPoisson(String),

    #[error("derivation does not square to zero on {generator}: residual {residual}")]
    SquareNonzero { generator: String, residual: String },

    #[error("structure is not homogeneous in the fiber variables: {0}")]
    NonHomogeneous(String),

    #[error("bracket {bracket} has the wrong degree in the fiber variables: {value}")]
    FiberDegree { bracket: String, value: String },

    #[error("variable name `{0}` is used twice")]
    NameCollision(String),

    #[error("{0}")]
    Invalid(String),
}
