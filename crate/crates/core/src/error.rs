use thiserror::Error;

/// Errors raised by the sequence, mask and refinement routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum NuccError {
    #[error("insufficient support: {op} needs at least {needed} values, got {got}")]
    InsufficientSupport {
        op: &'static str,
        needed: usize,
        got: usize,
    },

    #[error("trigonometric singularity: |sin({arg})| is below the guard")]
    TrigonometricSingularity { arg: f64 },

    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),

    #[error("degenerate reproduction system (det = {det:e})")]
    DegenerateSystem { det: f64 },

    #[error("domain too small: {0}")]
    DomainTooSmall(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, NuccError>;
