use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite value for {what}")]
    NonFinite { what: &'static str },

    #[error("matrix order must be at least 1, got {0}")]
    InvalidOrder(usize),

    #[error("invalid spectral extremes: need 0 <= lo <= hi, got lo={lo}, hi={hi}")]
    InvalidExtremes { lo: f64, hi: f64 },

    #[error("matrix order {order} exceeds the oracle limit of {max}")]
    OrderTooLarge { order: usize, max: usize },

    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),

    #[error("Jacobi iteration did not converge within {sweeps} sweeps")]
    NonConvergence { sweeps: usize },

    #[error("quadrature did not converge: value {value} with error estimate {abs_error_estimate} ({context})")]
    QuadratureFailure {
        value: f64,
        abs_error_estimate: f64,
        context: String,
    },

    #[error("singular point {point} must coincide with an endpoint of [{a}, {b}]")]
    InvalidSingularPoint { point: f64, a: f64, b: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}
