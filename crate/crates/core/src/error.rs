use thiserror::Error;

/// Errors shared across the crate. Numerical routines return these instead of
/// panicking so the CLI can map every failure to a diagnostic and an exit code.
#[derive(Debug, Error)]
pub enum Error {
    #[error("series orders differ: {left} vs {right}")]
    MismatchedOrders { left: usize, right: usize },

    #[error("coefficient {index} is not finite")]
    NonFiniteCoefficient { index: usize },

    #[error("real power of a series needs a nonzero constant term")]
    ZeroConstantTerm,

    #[error("inner series of a composition must vanish at the origin (|phi(0)| = {0:.3e})")]
    NonzeroCompositionConstant(f64),

    #[error("radius {0} is outside the admissible range")]
    RadiusOutOfRange(f64),

    #[error("opening exponent {0} is outside the admissible range")]
    AlphaOutOfRange(f64),

    #[error("boundary angle {0} is outside (-pi, pi) or within 1e-9 of the excluded endpoint")]
    AngleOutOfRange(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("integral representation precondition failed: {0}")]
    IntegralPrecondition(String),

    #[error("compensated sum lost all significant digits (condition {condition:.2e})")]
    CatastrophicCancellation { condition: f64 },

    #[error("singular parameter combination: {0}")]
    Singular(String),

    #[error("output formatting failed: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
