use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("operands live on different frames")]
    FrameMismatch,
    #[error("form degree {degree} exceeds frame dimension {dim}")]
    DegreeOutOfRange { degree: usize, dim: usize },
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("repeated index {0} in an alternating index tuple")]
    RepeatedIndex(usize),
    #[error("expected {expected} arguments, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("expected a form of degree {expected}, got degree {got}")]
    WrongDegree { expected: usize, got: usize },
    #[error("interior product of a 0-form")]
    InteriorOfFunction,
    #[error("Jacobi identity fails on (e{}, e{}, e{})", .0 + 1, .1 + 1, .2 + 1)]
    JacobiViolation(usize, usize, usize),
    #[error("invalid bracket [e{}, e{}]: {reason}", .i + 1, .j + 1)]
    InvalidBracket { i: usize, j: usize, reason: String },
    #[error("not almost cosymplectic: {0}")]
    NotAlmostCosymplectic(String),
    #[error("zero 1-form has no Cartan class")]
    ZeroForm,
    #[error("dimension precondition violated: {0}")]
    Dimension(String),
    #[error("degenerate 2-form: flat map is not invertible")]
    Degenerate,
    #[error("point is not on the unit sphere: sum of squares is {0}")]
    NotOnSphere(String),
    #[error("metric is not positive definite: {0}")]
    IndefiniteMetric(String),
    #[error("not an almost contact structure: {0}")]
    NotAlmostContact(String),
    #[error("not an almost contact 3-structure: {0}")]
    NotThreeStructure(String),
    #[error("musical maps do not anticommute for ({0}, {1})")]
    AnticommutationFailed(usize, usize),
    #[error("internal cross-check disagreement: {0}")]
    Inconsistent(String),
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("unknown name `{0}`")]
    UnknownName(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
