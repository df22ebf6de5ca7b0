use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// `n = 1` makes the scale exponents undefined.
    #[error("degenerate scale reduction: n = 1")]
    DegenerateScale,

    #[error("domain error: {0}")]
    Domain(String),

    /// A field was evaluated at a point where it is singular.
    #[error("singular point (t={t}, x={x}, y={y})")]
    Singular { t: f64, x: f64, y: f64 },

    /// A solution family's parameter restrictions are violated.
    /// The integrand `e^{-az²}/z` has a pole at `z = 0`.
    #[error("singular integration endpoint (r={r}, delta={delta})")]
    SingularEndpoint { r: f64, delta: f64 },

    #[error("restriction violated: {0}")]
    Restriction(String),

    #[error("quadrature did not converge (estimate {estimate:e}, error {error:e})")]
    Quadrature { estimate: f64, error: f64 },

    #[error("ODE integration failed at r={at}: {reason}")]
    Integration { at: f64, reason: String },

    #[error("symmetry not applicable: {0}")]
    Inapplicable(String),

    #[error("estimation failed: {0}")]
    Estimation(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
