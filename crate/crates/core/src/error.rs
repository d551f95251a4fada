use thiserror::Error;

pub type Result<T, E = GeomError> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    #[error("invalid body: {0}")]
    InvalidBody(String),

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    /// Boundary point lies on a ridge of a polytope, so the outer normal is
    /// not unique.
    #[error("ambiguous normal: point lies on a ridge (facets {0} and {1})")]
    Ridge(usize, usize),

    #[error("point is not on the boundary (residual {0:e})")]
    OffBoundary(f64),

    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}
