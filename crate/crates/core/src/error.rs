use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("horizon {horizon} is smaller than the support end {support_end}")]
    InvalidHorizon { horizon: usize, support_end: usize },

    #[error("order must be a positive integer, got {alpha}")]
    InvalidOrder { alpha: u32 },

    #[error("{what} is only defined for n >= {min}, got n = {n}")]
    OutOfRange {
        what: &'static str,
        n: u64,
        min: u64,
    },

    #[error("quadratic form has imaginary residue {imag:e} above tolerance {tolerance:e}")]
    NonHermitianResidue { imag: f64, tolerance: f64 },

    #[error("factorization breakdown: gamma^2 = {gamma_sq:e} <= 0 at n = {index}")]
    FactorizationBreakdown { index: u64, gamma_sq: f64 },

    #[error("remainder coefficients cover n <= {available}, but n = {needed} is required")]
    Coverage { needed: u64, available: u64 },

    #[error("boundary condition violated: A({index}) must vanish")]
    BoundaryCondition { index: usize },

    #[error("sequence `{label}` has no value at n = {index} (defined for n <= {len})")]
    UndefinedIndex { label: String, index: u64, len: u64 },

    #[error("sequence `{label}` has non-positive value at n = {index}")]
    NonPositive { label: String, index: u64 },

    #[error("invalid precision: {0}")]
    InvalidPrecision(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
