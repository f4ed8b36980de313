use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division is not exact: remainder is nonzero")]
    NonExactDivision,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("variable {0} is not bound in the assignment")]
    Unbound(&'static str),
    #[error("bad prime: a coefficient denominator vanishes modulo {0}")]
    BadPrime(u64),
    #[error("subset weight is not an integer: {0}")]
    NonIntegralWeight(String),
    #[error("invalid subset: {0}")]
    InvalidSubset(String),
    #[error("pole in partial-fraction coefficient at lambda = {0}")]
    Pole(i64),
    #[error("partition has {len} parts, more than n = {n}")]
    PartitionTooLong { len: usize, n: usize },
    #[error("invalid Frobenius symbol: {0}")]
    InvalidFrobenius(String),
    #[error("parity violation: {0}")]
    Parity(String),
    #[error("gauge singularity: {0}")]
    GaugeSingularity(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("singular point: {0}")]
    Singular(String),
    #[error("decode error at {path}: {msg}")]
    Decode { path: String, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
