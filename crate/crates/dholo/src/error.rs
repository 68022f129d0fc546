use thiserror::Error;

/// Engine-wide error type. Variants correspond to the error classes surfaced
/// by the CLI exit codes.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("E_NONMONOMIAL: transition map outside the supported monomial family: {0}")]
    NonMonomial(String),
    #[error("E_DIV_ZERO: division by zero")]
    DivZero,
    #[error("E_INVALID_ATLAS: {0}")]
    InvalidAtlas(String),
    #[error("E_INVALID_BUNDLE: {0}")]
    InvalidBundle(String),
    #[error("E_INVALID_OPERATOR: {0}")]
    InvalidOperator(String),
    #[error("E_ATLAS_MISMATCH: operands live on different atlases")]
    AtlasMismatch,
    #[error("E_NOT_COMPACT: operation requires the atlas compact flag")]
    NotCompact,
    #[error("E_BOUND_TOO_SMALL: bound {given} below required auto-bound {needed}")]
    BoundTooSmall { given: i64, needed: i64 },
    #[error("E_SHAPE_MISMATCH: {0}")]
    ShapeMismatch(String),
    #[error("E_DECOMPOSABLE: idempotent discovered: {0}")]
    Decomposable(String),
    #[error("E_BAD_GLUING: {0}")]
    BadGluing(String),
    #[error("E_BAD_METRIC: {0}")]
    BadMetric(String),
    #[error("E_BAD_CONNECTION: {0}")]
    BadConnection(String),
    #[error("E_INCOMPATIBLE: {0}")]
    Incompatible(String),
    #[error("E_PARSE: line {line}, col {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("E_SEMANTIC: {path}: {msg}")]
    Semantic { path: String, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable process exit code per error class (0 is success).
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 2,
            Error::Semantic { .. } => 3,
            Error::InvalidAtlas(_) => 4,
            Error::InvalidBundle(_) => 5,
            Error::InvalidOperator(_) => 6,
            Error::AtlasMismatch => 7,
            Error::NotCompact => 8,
            Error::BoundTooSmall { .. } => 9,
            Error::ShapeMismatch(_) => 10,
            Error::Decomposable(_) => 11,
            Error::BadGluing(_) => 12,
            Error::BadMetric(_) => 13,
            Error::BadConnection(_) => 14,
            Error::Incompatible(_) => 15,
            Error::NonMonomial(_) => 16,
            Error::DivZero => 17,
        }
    }
}
