use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid dielectric stack: {0}")]
    InvalidStack(String),

    #[error("position outside the admissible domain: {0}")]
    Domain(String),

    #[error("charge at {z0_nm} nm is within the singularity guard ({guard_nm} nm) of an interface")]
    Singularity { z0_nm: f64, guard_nm: f64 },

    #[error("series failed to converge after {terms} grouped terms (partial sum {partial}, error bound {bound})")]
    Convergence { terms: usize, partial: f64, bound: f64 },

    #[error("quadrature did not converge: estimate {estimate}, error bound {error}")]
    Quadrature { estimate: f64, error: f64 },

    #[error("invalid potential profile: {0}")]
    InvalidProfile(String),

    #[error("eigenvalue search failed: {0}")]
    Search(String),

    #[error("grid too coarse: {0}")]
    GridTooCoarse(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("state is unbound: {0}")]
    Unbound(String),

    #[error("unknown material `{0}`")]
    NotFound(String),

    #[error("numerical differentiation needs at least 3 strictly increasing points, got {0}")]
    Differentiation(usize),

    #[error("value {value} lies outside the table range [{min}, {max}]")]
    Extrapolation { value: f64, min: f64, max: f64 },

    #[error("wavefunction grid does not match the gap: {0}")]
    GridMismatch(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
