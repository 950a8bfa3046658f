use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("division by the zero rational function")]
    DivisionByZero,

    #[error("evaluation at a pole of the denominator")]
    Pole,

    #[error("singular matrix: {0}")]
    Singular(String),

    #[error("identity test needs at least 3 trials, got {0}")]
    TooFewTrials(usize),

    #[error("could not sample a point off the denominator zero set")]
    SamplingFailed,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unknown family `{0}`")]
    UnknownFamily(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("weight is not closed: d-bar components fail the symmetry check")]
    NotClosed,

    #[error("function is not multi-radial in slot {0}")]
    NotMultiRadial(usize),

    #[error("problem too large: {what} = {size} exceeds {limit}")]
    TooLarge { what: &'static str, size: usize, limit: usize },

    #[error("operator is not self-adjoint for the weighted pairing: entry ({row}, {col}) off by {gap}")]
    NotSelfAdjoint { row: usize, col: usize, gap: f64 },

    #[error("form is not closed: {0}")]
    NotClosedForm(String),

    #[error("quadrature failed: {0}")]
    Quadrature(String),

    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
