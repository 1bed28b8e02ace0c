use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("denominator vanishes at q = {0}")]
    DenominatorVanishes(String),
    #[error("element is not invertible: {0}")]
    NotInvertible(String),
    #[error("resource budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("element is not normal-ordered for the {0} ordering")]
    NotNormalOrdered(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
