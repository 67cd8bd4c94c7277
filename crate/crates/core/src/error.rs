use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Failures surfaced by the numerical kernels and the inverse solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole of Gamma at z = {re} + {im}i (non-positive integer)")]
    Pole { re: f64, im: f64 },

    #[error("|Gamma(z)| overflows at z = {re} + {im}i")]
    Overflow { re: f64, im: f64 },

    #[error("argument outside the domain: {0}")]
    Domain(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("invalid branch k = {0}: branches exist only for k <= 0")]
    InvalidBranch(i64),

    /// One of the three exclusion conditions of the real domain selection.
    #[error("no branch: {0}")]
    NoBranch(&'static str),

    #[error(
        "no real inverse on branch {k}: |g| = {g_abs} is below |gamma_{m}| = {extremum_abs} \
         (branch requires {requirement})"
    )]
    BelowExtremum {
        k: i64,
        m: i64,
        g_abs: f64,
        extremum_abs: f64,
        requirement: String,
    },

    #[error("solver did not converge after {iterations} iterations: {detail}")]
    NonConvergence { iterations: usize, detail: String },

    #[error("x = {0} is a pole of Gamma and belongs to no branch")]
    PolePoint(f64),

    #[error("branch {0} is not supported in the complex plane (only k = 0 and k = -1)")]
    UnsupportedBranch(i64),

    #[error("z = {re} + {im}i is not in the range of branch {k}: {detail}")]
    NotInRange {
        re: f64,
        im: f64,
        k: i64,
        detail: String,
    },

    #[error("contour could not be trimmed: {0}")]
    TrimFailure(String),
}

impl Error {
    /// True for errors that report a failed iteration rather than a bad input.
    pub fn is_non_convergence(&self) -> bool {
        matches!(self, Error::NonConvergence { .. })
    }
}
