use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Parameters outside the domain where a quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// Enumeration request larger than the configured oracle cap.
    #[error("resource error: {what} = {requested} exceeds the oracle cap {cap}")]
    Resource {
        what: &'static str,
        requested: usize,
        cap: usize,
    },

    /// A rational formula produced a non-integer quotient.
    #[error("inexact division in {formula}: {numerator} / {denominator}")]
    Inexact {
        formula: &'static str,
        numerator: String,
        denominator: String,
    },

    #[error("{formula} evaluated to a negative count {value}")]
    Negative { formula: &'static str, value: String },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
