use thiserror::Error;

/// Failure modes shared by every evaluation routine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QError {
    #[error("pole at {what} (r = {r})")]
    Pole { what: String, r: i64 },
    #[error("series not converged after {terms} terms (tail estimate {tail:e})")]
    NotConverged { terms: usize, tail: f64 },
    #[error("divergent series: {0}")]
    DivergentSeries(String),
    #[error("lower parameter hits a pole: {0}")]
    LowerParamPole(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("argument too close to zero")]
    ZeroArgument,
    #[error("invalid base q = {0}: need 0 < q < 1")]
    InvalidBase(f64),
}

pub type QResult<T> = Result<T, QError>;
