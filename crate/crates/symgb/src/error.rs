//! Error type shared by the library and the CLI.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Error {
    /// Malformed input text; `pos` is a character offset into the input.
    Parse { pos: usize, msg: String },
    /// A documented operation precondition does not hold.
    Precondition(String),
    /// A level cap was exceeded; carries a description of the offending
    /// branch so nothing is truncated silently.
    LevelCap(String),
    /// The randomized gin vote produced no repeated outcome.
    IndeterminateGin(String),
    /// The fraction-free prime harvest failed its spot check; results for
    /// unharvested primes would be untrustworthy.
    HarvestCheck(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Parse { pos, msg } => write!(f, "parse error at {pos}: {msg}"),
            Error::Precondition(msg) => write!(f, "precondition violated: {msg}"),
            Error::LevelCap(msg) => write!(f, "level cap exceeded: {msg}"),
            Error::IndeterminateGin(msg) => write!(f, "indeterminate gin: {msg}"),
            Error::HarvestCheck(msg) => write!(f, "prime harvest check failed: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
