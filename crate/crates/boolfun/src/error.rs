//! Library-wide error type.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A size parameter exceeds what the operation supports.
    Capacity {
        what: &'static str,
        value: usize,
        limit: usize,
    },
    /// A coordinate index is not below the function arity.
    CoordOutOfRange { coord: usize, n: usize },
    /// An argument lies outside the operation's domain.
    Domain(String),
    /// Restriction masks are inconsistent with each other or with the arity.
    Restriction(String),
    /// Partition input violates the balance precondition.
    PartitionInput(String),
    /// A configuration is internally inconsistent.
    Config(String),
    /// A text form could not be parsed.
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Capacity { what, value, limit } => {
                write!(f, "{what} = {value} exceeds the supported limit {limit}")
            }
            Error::CoordOutOfRange { coord, n } => {
                write!(f, "coordinate {coord} out of range for arity {n}")
            }
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Restriction(msg) => write!(f, "invalid restriction: {msg}"),
            Error::PartitionInput(msg) => write!(f, "rejected partition input: {msg}"),
            Error::Config(msg) => write!(f, "invalid configuration: {msg}"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
