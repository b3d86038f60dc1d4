use thiserror::Error;

use crate::complex::Cochain;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("simplicial identity d_{i} d_{j} = d_{} d_{i} fails on simplex {simplex} of level {level}", j - 1)]
    IdentityViolation { i: usize, j: usize, level: usize, simplex: usize },
    #[error("face d_{face} of simplex {simplex} in level {level} points at missing simplex {target}")]
    DanglingFace { level: usize, face: usize, simplex: usize, target: usize },
    #[error("level mismatch: {0}")]
    LevelMismatch(String),
    #[error("chain is not a reduced cycle")]
    NotACycle,
    #[error("cycle is not a boundary (separating functional attached)")]
    NotABoundary { certificate: Box<Cochain> },
    #[error("truncation too shallow: level {needed} required, complex stops at {max_dim}")]
    TruncationTooShallow { needed: usize, max_dim: usize },
    #[error("composition table is not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("composition table has no two-sided identity")]
    NoIdentity,
    #[error("cycle space of dimension {dim} exceeds the vertex-enumeration cap {cap}")]
    DimensionCapExceeded { dim: usize, cap: usize },
    #[error("invalid witness table: {0}")]
    InvalidWitness(String),
    #[error("interweaving horizon exhausted: {0}")]
    HorizonExhausted(String),
    #[error("carrier violation: {0}")]
    CarrierViolation(String),
    #[error("filler failure: {0}")]
    FillerFailure(String),
    #[error("f(x) is not below g(x) at vertex {0}")]
    NotComparable(usize),
    #[error("homotopy identity fails: {0}")]
    HomotopyIdentity(String),
    #[error("prefix window too short: {0}")]
    WindowTooShort(String),
    #[error("generator {0} has a nontrivial tail")]
    InfiniteSupport(usize),
    #[error("invalid poset: {0}")]
    InvalidPoset(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
