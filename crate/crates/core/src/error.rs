use alloc::string::String;

/// Errors raised by series arithmetic, q-functions and oracles.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("term q^{exponent} lies outside a window ending at q^{prec}")]
    WindowViolation { exponent: i64, prec: i64 },
    #[error("coefficient of q^{exponent} requested but the series is only known below q^{prec}")]
    PrecisionExceeded { exponent: i64, prec: i64 },
    #[error("series has no nonzero coefficient in its window")]
    NotInvertible,
    #[error("series window is empty")]
    EmptyWindow,
    #[error("monomial coefficient must be nonzero")]
    ZeroMonomial,
    #[error("infinite product with parameter exponent {exponent} does not converge")]
    NonconvergentProduct { exponent: i64 },
    #[error("basic hypergeometric series did not converge within {horizon} terms")]
    NonconvergentPhi { horizon: usize },
    #[error("division by zero: {0}")]
    DivisionByZero(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = core::result::Result<T, Error>;
