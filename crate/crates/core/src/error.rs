use crate::kernels::Method;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    /// An iterative method gave up; `best` is the estimate it had reached.
    #[error(
        "{method} did not converge ({detail}); best estimate {best_re:e}{best_im:+e}i, error estimate {abs_error:e}"
    )]
    Convergence {
        method: Method,
        best_re: f64,
        best_im: f64,
        abs_error: f64,
        detail: String,
    },

    #[error("no optimum: {0}")]
    NoOptimum(String),

    #[error("invalid spin state: {0}")]
    InvalidState(String),

    /// Raised when a sampler produces a value outside its support. Indicates a bug.
    #[error("sampler bound violated: {0}")]
    Sampling(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
