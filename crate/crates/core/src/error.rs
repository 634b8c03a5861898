use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("algebra mismatch: {left} vs {right}")]
    AlgebraMismatch { left: String, right: String },

    #[error("coordinate vector has length {got}, algebra dimension is {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid algebra specification `{spec}`: {reason}")]
    InvalidAlgebra { spec: String, reason: String },

    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off_diagonal:e})")]
    NoConvergence { sweeps: usize, off_diagonal: f64 },

    #[error("{op} undefined: eigenvalue {eigenvalue:e} is not above the positivity threshold {threshold:e}")]
    Domain {
        op: &'static str,
        eigenvalue: f64,
        threshold: f64,
    },

    #[error("singular element: eigenvalue {eigenvalue:e} is below the invertibility threshold {threshold:e}")]
    Singular { eigenvalue: f64, threshold: f64 },

    #[error("point is not in the positive cone (minimal eigenvalue {min_eigenvalue:e})")]
    NotInCone { min_eigenvalue: f64 },

    #[error("singular operator")]
    SingularOperator,

    #[error("operator is not in the structure algebra (derivation residual {residual:e} > {tolerance:e})")]
    NotInStructureAlgebra { residual: f64, tolerance: f64 },

    #[error("operator is not a derivation (residual {residual:e} > {tolerance:e})")]
    NotDerivation { residual: f64, tolerance: f64 },

    #[error("invalid gauge function `{0}`")]
    InvalidGauge(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("lift residual {residual:e} exceeded {tolerance:e} at t = {time}")]
    LiftDiverged {
        time: f64,
        residual: f64,
        tolerance: f64,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
