use std::fmt;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Polynomial text that does not match the grammar. `pos` is a byte offset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at position {}: {}", self.pos, self.msg)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("degree undefined for the zero polynomial")]
    DegreeUndefined,
    #[error("expected exponent vectors of length {expected}, got {got}")]
    NvarsMismatch { expected: usize, got: usize },
    #[error("state explosion: more than {cap} states")]
    StateExplosion { cap: usize },
    #[error("the zero polynomial has no constant-term automaton")]
    ZeroPolynomial,
    #[error("bound too large to represent: {0}")]
    BoundTooLarge(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("malformed data: {0}")]
    Malformed(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
