use thiserror::Error;

/// Errors surfaced by the solver, the manifold models, and the harness.
#[derive(Debug, Error)]
pub enum Error {
    #[error("secant undefined: the two points coincide")]
    EqualPoints,

    #[error("manifold cannot produce two distinct points")]
    DegenerateManifold,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("basis columns are not orthonormal (max Gram deviation {deviation:e})")]
    NotOrthonormal { deviation: f64 },

    #[error("recurrence diverges: alpha = {alpha} >= 1, beta undefined")]
    Divergent { alpha: f64 },

    #[error("shared denominator {value} <= 0 in convergence constants")]
    SingularDenominator { value: f64 },

    #[error("template does not fit inside the domain")]
    TemplateTooLarge,

    #[error("template has zero norm")]
    ZeroTemplate,

    #[error("reference signal has zero norm")]
    ZeroReference,

    #[error("truth signal has zero norm")]
    ZeroTruth,

    #[error("iterate became non-finite at iteration {iteration} (step size too large?)")]
    NonFiniteIterate { iteration: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
