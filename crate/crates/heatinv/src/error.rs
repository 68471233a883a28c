//! Error type shared by every numerical routine in the crate.

use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Input lies outside the mathematical or physical domain
    /// (non-admissible measurement, argument out of range, missing field).
    Domain(String),
    /// The polynomial solve produced no admissible root; the requested value
    /// is outside the scheme's validity range.
    NoRoot(String),
    /// Requested order or option is beyond what the library provides.
    Unsupported(String),
    /// Adaptive quadrature or iteration exhausted its budget before reaching
    /// the requested tolerance.
    Tolerance(String),
    /// A series hit `max_terms` before its terms dropped below `term_tol`.
    Truncation(String),
    /// A root bracket does not enclose a sign change.
    Bracket(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(m) => write!(f, "domain error: {m}"),
            Error::NoRoot(m) => write!(f, "no admissible root: {m}"),
            Error::Unsupported(m) => write!(f, "unsupported: {m}"),
            Error::Tolerance(m) => write!(f, "tolerance failure: {m}"),
            Error::Truncation(m) => write!(f, "series truncation: {m}"),
            Error::Bracket(m) => write!(f, "bracket error: {m}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
