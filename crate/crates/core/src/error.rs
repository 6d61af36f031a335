use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },

    #[error("matrix shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("operation requires degree >= 1")]
    DegreeZero,

    #[error("derivation direction must be nonzero")]
    ZeroDirection,

    #[error("the zero form has no well-defined secant membership")]
    ZeroForm,

    #[error("derivative order {order} out of range for degree {degree}")]
    DerivativeOrder { order: i64, degree: usize },

    #[error("T = S^dU is excluded; only proper subspaces have a numerical type")]
    FullSpace,

    #[error("numerical type {0} is not admissible: {1}")]
    InadmissibleType(String, String),

    #[error("vertex meets the rational normal curve (a = {a} >= 0); projection is degenerate")]
    VertexMeetsCurve { a: i32 },

    #[error("invalid cohomology profile: {0}")]
    InvalidProfile(String),

    #[error("invalid splitting type: {0}")]
    InvalidSplitting(String),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("could not parse rational `{0}`")]
    ParseRational(String),

    #[error("retry budget of {budget} draws exhausted (non-generic random draws)")]
    RetryBudget { budget: u32 },

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
