use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: String, found: String },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("polygon rank n = {0} is outside the supported range 2..=5")]
    UnsupportedRank(usize),

    #[error("label {label} is outside 1..={max}")]
    LabelOutOfRange { label: usize, max: usize },

    #[error("parameter matrix is not generic: d_{{{i},{j},{k}}} vanishes")]
    NotGeneric { i: usize, j: usize, k: usize },

    #[error("no generic parameter matrix after {attempts} draws; last vanishing minor d_{{{i},{j},{k}}}")]
    GenericityBudget {
        attempts: usize,
        i: usize,
        j: usize,
        k: usize,
    },

    #[error("singular transition matrix A^({p}): denominator d_{{{i},{j},{p}}} vanishes")]
    Singular { i: usize, j: usize, p: usize },

    #[error("expected a vertex set of size {expected}, got {found}")]
    Arity { expected: usize, found: usize },

    #[error("{0}")]
    Domain(String),

    #[error("kernel has dimension {found}, expected {expected}")]
    KernelDimension { expected: usize, found: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
