//! Crate-wide error type.

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {v} out of range (n = {n})")]
    IndexOutOfRange { v: u32, n: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(u32),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(u32, u32),
    #[error("vertex {0} is isolated and not in C; the instance is undefined")]
    IsolatedOutsideC(u32),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("sequence repeats vertex {0}")]
    RepeatedVertex(u32),
    #[error("sequence is not legal (conflict at position {position})")]
    NotLegal { position: usize },
    #[error("sequence of length {len} does not fit in {m} slots")]
    TooLong { len: usize, m: usize },
    #[error("no legal sequence of length {0} exists")]
    NoLegalPrefix(usize),
    #[error("every tabu movement is forbidden")]
    AllMovesForbidden,
    #[error("instance too large for exhaustive enumeration (n = {n}, limit {limit})")]
    TooLarge { n: usize, limit: usize },
    #[error("bad parameters: {0}")]
    BadParameters(String),

    // instance/solution file handling
    #[error("line {line}: malformed header: {msg}")]
    MalformedHeader { line: usize, msg: String },
    #[error("line {line}: edge listed before the problem header")]
    EdgeBeforeHeader { line: usize },
    #[error("line {line}: vertex {v} out of range (n = {n})")]
    VertexOutOfRange { line: usize, v: i64, n: usize },
    #[error("line {line}: {msg}")]
    ParseError { line: usize, msg: String },

    // model / cut machinery
    #[error("assignment dimensions do not match the model")]
    DimensionMismatch,
    #[error("cut hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("backend failed: {0}")]
    BackendFailure(String),
    #[error("backend timed out")]
    BackendTimeout,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
