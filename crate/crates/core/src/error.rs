use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex label {label} is outside 1..={n}")]
    LabelOutOfRange { label: u32, n: usize },

    #[error("ambient vertex count {0} is not supported (limit is 64)")]
    TooManyVertices(usize),

    #[error("the void complex (no faces at all) is not a simplicial complex here")]
    VoidComplex,

    #[error("{0} is not a face of the complex")]
    NotAFace(String),

    #[error("every facet contains vertex {0}: the complex is a cone with that apex")]
    ConeApex(u32),

    #[error("the full simplex has no non-faces")]
    FullSimplex,

    #[error("the toric ideal is zero")]
    ZeroIdeal,

    #[error("enumeration limit exceeded: n = {n}, limit = {limit}")]
    EnumerationLimit { n: usize, limit: usize },

    #[error("invalid level vector: {0}")]
    InvalidLevels(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("inconsistent margin vector: {0}")]
    InconsistentMargins(String),

    #[error("{0}")]
    Invalid(String),

    #[error("move is not in the kernel of the design matrix")]
    NotInKernel,

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
