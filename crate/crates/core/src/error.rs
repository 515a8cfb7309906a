use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// `b = 1` makes the closed-form solution of the chartist-only map singular.
    #[error("degenerate chartist impact b = 1")]
    DegenerateB,

    /// The immediate basin and its preimages only exist for `0 < b < 1`.
    #[error("operation requires 0 < b < 1, got b = {0}")]
    RequiresContraction(f64),

    #[error("orbit diverged after {0} iterations")]
    Diverged(usize),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
