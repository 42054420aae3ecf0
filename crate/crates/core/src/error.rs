use thiserror::Error;

use crate::time::Interval;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid carrier: {0}")]
    InvalidCarrier(String),

    #[error("interval {interval} does not lie within a carrier of horizon {horizon}")]
    MalformedInterval { interval: Interval, horizon: usize },

    #[error("invalid universe: {0}")]
    InvalidUniverse(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("value {value} is not in the domain of `{var}`")]
    ValueOutOfDomain { var: String, value: String },

    #[error("ill-typed expression: {0}")]
    IllTyped(String),

    #[error("universe mismatch: {0}")]
    UniverseMismatch(String),

    #[error("carrier mismatch: expected horizon {expected}, found {found}")]
    CarrierMismatch { expected: usize, found: usize },

    #[error("enumeration of {what} needs {size} candidates, over the budget of {budget}")]
    BudgetExceeded {
        what: String,
        size: String,
        budget: u128,
    },

    #[error("invalid system: {0}")]
    InvalidSystem(String),

    #[error("unknown law `{0}`")]
    UnknownLaw(String),
}

pub type Result<T> = std::result::Result<T, Error>;
