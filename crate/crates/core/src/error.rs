use thiserror::Error;

/// Errors raised by model validation, numeric kernels and I/O.
#[derive(Debug, Error)]
pub enum MdpError {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: {what} (expected {expected}, got {got})")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("{what} index {index} out of range (size {size})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        size: usize,
    },

    #[error("discount invariant violated: gamma = {0} is not in [0, 1)")]
    Discount(f64),

    #[error("nonnegativity invariant violated: {0}")]
    Negative(String),

    #[error("stochasticity invariant violated: {0}")]
    Stochasticity(String),

    #[error("finiteness invariant violated: {0}")]
    NonFinite(String),

    #[error("singular linear system (pivot {pivot:e} in column {column})")]
    Singular { column: usize, pivot: f64 },

    #[error("numerical degeneracy in rank-1 update at state {state}, action {action}: |1 - w^T q| = {denominator:e}")]
    Degenerate {
        state: usize,
        action: usize,
        denominator: f64,
    },

    #[error("unsupported dimension: {0}")]
    UnsupportedDimension(String),

    #[error("{count} deterministic policies exceed the cap of {cap}; use a smaller instance or raise the cap")]
    CapExceeded { count: f64, cap: usize },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = MdpError> = std::result::Result<T, E>;
