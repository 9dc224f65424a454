use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// The family starts at `A_1`; `n = 0` and similar out-of-domain sizes land here.
    #[error("invalid index: {0}")]
    InvalidIndex(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// `n ≢ m (mod m+1)` or `m >= n`; `remainder` is `(n - m) mod (m + 1)` when `n > m`.
    #[error("containment condition not met for m={m}, n={n}: (n-m) mod (m+1) = {remainder}")]
    NotSufficient { m: u64, n: u64, remainder: i64 },

    /// Exact interpolation produced a non-integer coefficient. Only an arithmetic bug can cause this.
    #[error("interpolation produced non-integral coefficient at index {index}: {value}")]
    NonIntegralInterpolation { index: usize, value: String },

    #[error("substitution x -> x/2 is not integral at coefficient {index}")]
    IntegralityViolation { index: usize },

    #[error("root iteration did not converge after {iterations} iterations (max residual {max_residual:e})")]
    NonConvergence {
        iterations: usize,
        max_residual: f64,
        residuals: Vec<f64>,
    },

    /// A scan over `n` failed at this `n`.
    #[error("at n = {n}: {source}")]
    ScanFailed {
        n: u64,
        #[source]
        source: Box<Error>,
    },

    #[error("polynomial of degree {0} has no roots to find")]
    DegreeTooLow(usize),

    #[error("degenerate point configuration: {0}")]
    DegenerateConfiguration(String),
}
