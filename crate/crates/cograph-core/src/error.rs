//! Crate-wide error type. Fallible operations validate their preconditions
//! (matching primes, matching dimensions, enumeration budgets) and report
//! violations through [`Error`] instead of panicking.

use alloc::string::String;
use core::fmt;

use crate::dpoly::ParseError;

/// Errors reported by this crate.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Error {
    /// The value offered as a field characteristic is not prime.
    NotPrime(u32),
    /// Two operands live over different prime fields.
    PrimeMismatch { left: u32, right: u32 },
    /// Vector or matrix dimensions do not agree.
    DimensionMismatch { expected: usize, actual: usize },
    /// A coordinate lies outside `[0, p)`.
    CoordOutOfRange { value: u32, p: u32 },
    /// An enumeration would visit more tuples than the configured budget.
    Budget { needed: u128, limit: u128 },
    /// A size computation overflowed the widest supported integer type.
    Overflow,
    /// Polynomial or matrix text could not be parsed.
    Parse(ParseError),
    /// The realization (or one of its blocks) is not well-formed for the
    /// requested operation.
    InvalidRealization(String),
    /// No constraint with the requested id exists in the realization.
    UnknownConstraint(String),
    /// A message or matrix carries the wrong domain tag for this operation.
    DomainTag { expected: &'static str },
    /// The MacWilliams transform produced an entry coefficient that is not a
    /// nonnegative integer, so the input cannot be a weight adjacency matrix
    /// paired with the claimed dual size.
    NonIntegralTransform { row: usize, col: usize },
    /// A value that must be an ordinary rational has a nonzero cyclotomic part.
    NonRational,
    /// An internal consistency contract was violated; indicates a bug rather
    /// than bad input.
    Inconsistent(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime(v) => write!(f, "{v} is not a prime"),
            Error::PrimeMismatch { left, right } => {
                write!(f, "prime fields differ: {left} vs {right}")
            }
            Error::DimensionMismatch { expected, actual } => {
                write!(f, "dimension mismatch: expected {expected}, got {actual}")
            }
            Error::CoordOutOfRange { value, p } => {
                write!(f, "coordinate {value} is outside [0, {p})")
            }
            Error::Budget { needed, limit } => {
                write!(f, "enumeration of {needed} tuples exceeds budget {limit}")
            }
            Error::Overflow => write!(f, "size computation overflowed"),
            Error::Parse(e) => write!(f, "{e}"),
            Error::InvalidRealization(msg) => write!(f, "invalid realization: {msg}"),
            Error::UnknownConstraint(id) => write!(f, "no constraint with id {id:?}"),
            Error::DomainTag { expected } => {
                write!(f, "operand carries the wrong domain tag (expected {expected})")
            }
            Error::NonIntegralTransform { row, col } => write!(
                f,
                "transform entry ({row}, {col}) has a non-integral or negative coefficient"
            ),
            Error::NonRational => write!(f, "value has a nonzero cyclotomic part"),
            Error::Inconsistent(msg) => write!(f, "internal consistency failure: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

impl From<ParseError> for Error {
    fn from(e: ParseError) -> Self {
        Error::Parse(e)
    }
}

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
