use thiserror::Error;

/// Errors raised by the geometry, algebra and numeric layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("index {index} out of range for dimension {dim}")]
    Index { index: usize, dim: usize },

    #[error("matrix is not skew-symmetric (max |σ + σᵗ| = {0:e})")]
    NotSkew(f64),

    #[error("skew form is degenerate (|det| = {0:e})")]
    Degenerate(f64),

    #[error("matrix does not preserve the metric (max |TᵗηT − η| = {0:e})")]
    NotLorentz(f64),

    #[error("plane ({0}, {1}) has the wrong signature for this generator")]
    Signature(usize, usize),

    #[error("weyl elements live over different skew forms")]
    ContextMismatch,

    #[error("grid specs differ: {0}")]
    SpecMismatch(String),

    #[error("invalid grid spec: {0}")]
    InvalidSpec(String),

    #[error("transform norm {norm} exceeds the declared bound {bound}")]
    Unbounded { norm: f64, bound: f64 },

    #[error("sample is not closed under the requested stabilizer element")]
    NotClosed,

    #[error("no orbit point within tolerance of the requested form")]
    MissingOrbitPoint,

    #[error("covector must have integer coordinates on the periodic box, got {0:?}")]
    IncommensurateCovector(Vec<f64>),

    #[error("empty selection")]
    Empty,

    #[error("format error: {0}")]
    Format(String),

    #[error("linear algebra failure: {0}")]
    LinAlg(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
