use thiserror::Error;

/// Errors produced by the summation machinery.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("q must satisfy q > 1, got {0}")]
    InvalidBase(f64),
    #[error("point on the logarithmic surface needs a positive finite modulus, got {0}")]
    InvalidModulus(f64),
    #[error("Euler parameter a must be nonzero")]
    ZeroParameter,
    #[error("quadrature window exhausted at half-width {half_width:.3} before the tail settled")]
    WindowExhausted { half_width: f64 },
    #[error("integrand produced a non-finite value")]
    NonFinite,
    #[error("direction {0} is singular")]
    SingularDirection(f64),
    #[error("evaluation point lies on a pole")]
    PoleHit,
    #[error("base-case Taylor series did not converge (tail {0:e})")]
    NonConvergent(f64),
    #[error("denominator q^(-1/2) zeta^2 - ab is too close to zero ({0:e})")]
    DivisionNearZero(f64),
    #[error("operator has no terms")]
    DegenerateOperator,
    #[error("summation orders must be positive and strictly increasing")]
    NotIncreasing,
    #[error("stage {stage} of the Laplace pipeline failed: {source}")]
    Stage { stage: usize, source: Box<Error> },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
