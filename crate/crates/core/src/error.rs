use thiserror::Error;

use crate::realization::CompositionClass;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("cannot mix i (i^2 = -1) and j (j^2 = +1) scalars")]
    MixedUnits,

    #[error("scalar {0} is not invertible")]
    NotInvertible(String),

    #[error("division of {numerator} by {denominator} is not exact")]
    InexactDivision { numerator: String, denominator: String },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("{0} is not defined for the {1} class")]
    WrongClass(&'static str, CompositionClass),

    #[error("class mismatch: {0} cannot compose with {1}")]
    ClassMismatch(CompositionClass, CompositionClass),

    #[error("wrong scalar tower: {0}")]
    WrongTower(String),

    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("inconsistent constraint system: {0}")]
    Inconsistent(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
