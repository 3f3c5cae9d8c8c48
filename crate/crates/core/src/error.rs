use thiserror::Error;

/// Errors raised by the geometry, incircle, marking, lemma and coverage layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid body: {0}")]
    InvalidBody(String),
    #[error("point ({x}, {y}) is not strictly interior to the body")]
    NotInterior { x: f64, y: f64 },
    #[error("degenerate hull: {0}")]
    DegenerateHull(String),
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
    #[error("point ({x}, {y}) is not an admissible incircle center")]
    NotAdmissibleCenter { x: f64, y: f64 },
    #[error(
        "budget exhausted: smallest alpha reached was {best_alpha} but k = {k} needs alpha < {target}"
    )]
    BudgetExhausted { k: usize, best_alpha: f64, target: f64 },
    #[error("linear program is unbounded")]
    Unbounded,
    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid_param(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter { name, reason: reason.into() }
}
