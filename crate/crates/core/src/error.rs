use thiserror::Error;

/// Errors raised by the counting, totient and analysis routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// A budget (enumeration size, sieve size, exact-mode guard) would be exceeded.
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    /// Two routes that must agree did not, or an exact division left a remainder.
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

macro_rules! invalid {
    ($($arg:tt)*) => {
        $crate::error::Error::InvalidArgument(format!($($arg)*))
    };
}

macro_rules! resource {
    ($($arg:tt)*) => {
        $crate::error::Error::ResourceLimit(format!($($arg)*))
    };
}

macro_rules! violation {
    ($($arg:tt)*) => {
        $crate::error::Error::InvariantViolation(format!($($arg)*))
    };
}

pub(crate) use invalid;
pub(crate) use resource;
pub(crate) use violation;
