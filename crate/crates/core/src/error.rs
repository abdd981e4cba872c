use std::fmt;

/// Errors shared by the solver, series, and diagnostics modules.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A constructor or solver argument failed validation.
    InvalidParameter { name: &'static str, message: String },
    /// An evaluation point lies outside the valid domain.
    OutOfDomain { what: &'static str, value: f64 },
    /// An index is outside its valid range (`index < limit` required).
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        limit: usize,
    },
    /// An iterate or series coefficient became non-finite, which signals
    /// blow-up or overflow rather than a usable solution.
    NonFinite { context: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::InvalidParameter { name, message } => {
                write!(f, "invalid parameter `{name}`: {message}")
            }
            Self::OutOfDomain { what, value } => {
                write!(f, "{what} out of domain: {value}")
            }
            Self::IndexOutOfRange { what, index, limit } => {
                write!(f, "{what} index {index} out of range (limit {limit})")
            }
            Self::NonFinite { context } => {
                write!(f, "non-finite value in {context}")
            }
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
