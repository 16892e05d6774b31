use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Operands whose shapes or groups do not line up.
    #[error("structural mismatch: {0}")]
    Structural(String),
    /// Input outside the domain of the operation (zero coordinate, wrong family, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// Valid input the crate deliberately does not handle.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// Enumeration would exceed the configured cap.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("parse error: {0}")]
    Parse(String),
    /// A runtime consistency check failed; indicates a bug.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

macro_rules! domain {
    ($($arg:tt)*) => { $crate::error::Error::Domain(format!($($arg)*)) };
}
macro_rules! structural {
    ($($arg:tt)*) => { $crate::error::Error::Structural(format!($($arg)*)) };
}
macro_rules! internal {
    ($($arg:tt)*) => { $crate::error::Error::Internal(format!($($arg)*)) };
}
pub(crate) use {domain, internal, structural};
