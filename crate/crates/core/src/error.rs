use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("pole at {0}")]
    Pole(f64),

    #[error("{0} did not converge")]
    NonConvergence(&'static str),

    #[error("integrand returned a non-finite value at x = {x}")]
    NonFiniteIntegrand { x: f64 },

    #[error("invalid interval ({a}, {b})")]
    InvalidInterval { a: f64, b: f64 },

    #[error("order {0} is too close to an integer for the quotient definition")]
    NearIntegerOrder(f64),

    #[error("invalid request: {0}")]
    InvalidRequest(String),
}
