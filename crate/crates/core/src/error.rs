use std::fmt;

/// Errors reported by instance handling, tour validation and the solvers.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Malformed instance or solution text. `line` is 1-based.
    Parse { line: usize, message: String },
    /// Structurally valid input that violates an instance invariant.
    InvalidInstance(String),
    /// A visit sequence that is not a permutation of the instance visits.
    InvalidTour(String),
    /// A move flagged infeasible was passed to `apply_move`.
    InfeasibleMove,
    /// Pair generation could not build a perfect pairing.
    Generation(String),
    /// Exhaustive routines refuse instances above their size limit.
    SizeGuard { n_pairs: usize, limit: usize },
    InvalidParams(String),
    Io(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Parse { line, message } => write!(f, "line {line}: {message}"),
            Error::InvalidInstance(msg) => write!(f, "invalid instance: {msg}"),
            Error::InvalidTour(msg) => write!(f, "invalid tour: {msg}"),
            Error::InfeasibleMove => write!(f, "refusing to apply an infeasible move"),
            Error::Generation(msg) => write!(f, "pair generation failed: {msg}"),
            Error::SizeGuard { n_pairs, limit } => {
                write!(f, "instance has {n_pairs} pairs, exhaustive search is limited to {limit}")
            }
            Error::InvalidParams(msg) => write!(f, "invalid parameters: {msg}"),
            Error::Io(msg) => write!(f, "i/o error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
