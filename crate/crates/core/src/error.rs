use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("integrand returned a non-finite value at {at}")]
    NonFinite { at: f64 },

    #[error("quadrature did not converge: estimate {value:e}, error {error:e} after {evaluations} evaluations")]
    NoConvergence { value: f64, error: f64, evaluations: usize },

    #[error("eigenvalue iteration did not converge after {iterations} iterations")]
    EigenNoConvergence { iterations: usize },

    #[error("matrix dimension {n} exceeds the cap of {cap}")]
    DimensionCap { n: usize, cap: usize },

    #[error("point {re}{im:+}i lies on the curve (distance {distance:e})")]
    OnCurve { re: f64, im: f64, distance: f64 },

    #[error("winding number residue {residue} too large; refine the curve sampling")]
    InsufficientSampling { residue: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
