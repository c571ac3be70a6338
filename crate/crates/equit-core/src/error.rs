//! Crate-wide error type.
//!
//! Every fallible operation in this crate reports one of the focused
//! variants below; none of them allocate, so the type is usable in
//! `no_std` builds.

use core::fmt;

/// Errors reported by the statistics, grid-search, and generator kernels.
#[derive(Debug, Clone, Copy, PartialEq)]
#[non_exhaustive]
pub enum Error {
    /// An input sample had fewer points than the operation requires.
    TooFewPoints {
        /// Minimum number of points the operation needs.
        needed: usize,
        /// Number of points actually supplied.
        got: usize,
    },
    /// A coordinate or weight was NaN or infinite.
    NonFinite,
    /// Paired inputs had different lengths.
    LengthMismatch {
        /// Length of the first sequence.
        x: usize,
        /// Length of the second sequence.
        y: usize,
    },
    /// A probability vector had a negative weight or did not sum to 1.
    InvalidDistribution(&'static str),
    /// A contingency table was empty, ragged, or had a zero total.
    InvalidTable(&'static str),
    /// A tuning parameter was outside its documented range.
    InvalidParameter(&'static str),
    /// The grid budget B(n) admits no 2 x 2 grid (B < 4).
    BudgetTooSmall {
        /// The offending budget value.
        b: f64,
    },
    /// An exhaustive-search input exceeded the configured size ceiling.
    TooLarge {
        /// Largest size the search accepts.
        limit: usize,
        /// Size that was supplied.
        got: usize,
    },
    /// A function was evaluated outside its domain.
    OutOfDomain,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::TooFewPoints { needed, got } => {
                write!(f, "need at least {needed} points, got {got}")
            }
            Error::NonFinite => write!(f, "input contains a non-finite value"),
            Error::LengthMismatch { x, y } => {
                write!(f, "paired inputs have different lengths ({x} vs {y})")
            }
            Error::InvalidDistribution(msg) => write!(f, "invalid distribution: {msg}"),
            Error::InvalidTable(msg) => write!(f, "invalid contingency table: {msg}"),
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::BudgetTooSmall { b } => {
                write!(f, "grid budget B = {b} admits no 2x2 grid (need B >= 4)")
            }
            Error::TooLarge { limit, got } => {
                write!(f, "input size {got} exceeds the exhaustive-search ceiling {limit}")
            }
            Error::OutOfDomain => write!(f, "argument lies outside the function domain"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

/// Convenience alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;
