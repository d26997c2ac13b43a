use thiserror::Error;

use crate::composition::Composition;

pub type Result<T> = std::result::Result<T, Error>;

/// How a failure should be reported by front ends.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorClass {
    /// The input could not be parsed or names values outside the valid range.
    MalformedInput,
    /// The input is well formed but violates an operation's precondition.
    Precondition,
    /// A numerical computation could not resolve the answer at the requested tolerance.
    Numerical,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("composition {composition} does not lie in Omega<{d}] (norm must be <= {d} with the same parity)")]
    OutsideOmega { composition: Composition, d: usize },

    #[error("pattern set is not closed: {missing} lies below {member} but is missing")]
    NotClosed { member: Composition, missing: Composition },

    #[error("composition {0} has reduced norm <= 1; the space must contain every cell of codimension <= 1")]
    CodimensionTooLow(Composition),

    #[error("degree {0} is too small for this operation")]
    DegreeTooSmall(usize),

    #[error("cannot move from degree {from} to degree {to}: target must be >= source with the same parity")]
    DegreeMismatch { from: usize, to: usize },

    #[error("letter w({i},{j}) is not a wall in degree {d}")]
    InvalidLetter { i: usize, j: usize, d: usize },

    #[error("composition {0} does not have the required shape ({1})")]
    PatternShape(Composition, &'static str),

    #[error("word error: {0}")]
    Word(String),

    #[error("move cannot be replayed: {0}")]
    InvalidMove(String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid coefficient path: {0}")]
    InvalidPath(String),

    #[error("tolerance {0:e} must lie in (0, 1e-3]")]
    InvalidTolerance(f64),

    #[error("base condition violated: {0}")]
    BaseCondition(String),

    #[error("pattern unresolved at given tolerance {tol:e}")]
    Unresolved { tol: f64 },

    #[error("loop not in generic position: forbidden tangency pattern suspected near segment {segment}")]
    NotGeneric { segment: usize },
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::OutsideOmega { .. }
            | Error::InvalidLetter { .. }
            | Error::Parse(_)
            | Error::InvalidPath(_)
            | Error::InvalidTolerance(_) => ErrorClass::MalformedInput,
            Error::NotClosed { .. }
            | Error::CodimensionTooLow(_)
            | Error::DegreeTooSmall(_)
            | Error::DegreeMismatch { .. }
            | Error::PatternShape(..)
            | Error::Word(_)
            | Error::Disconnected
            | Error::InvalidMove(_)
            | Error::BaseCondition(_) => ErrorClass::Precondition,
            Error::Unresolved { .. } | Error::NotGeneric { .. } => ErrorClass::Numerical,
        }
    }
}
