use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    /// A formula hit a vanishing denominator at the requested point. Samplers
    /// treat this as a signal to draw a new point.
    #[error("pole: {0} vanishes at this sample point")]
    Pole(String),

    #[error("{what} exceeds cap ({value} > {cap})")]
    CapExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("matrix contract violated: {0}")]
    Contract(String),

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("resampling exhausted after {0} attempts")]
    ResampleExhausted(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
