use thiserror::Error;

/// Errors raised by loading, enumeration and solving.
#[derive(Debug, Error)]
pub enum Error {
    #[error("capacity exceeded: tuple length {n} is above the enumeration limit {limit}")]
    Capacity { n: usize, limit: usize },

    #[error("capacity exceeded: more than {limit} orbits of length {n}")]
    OrbitLimit { n: usize, limit: usize },

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("invalid signature: {0}")]
    InvalidSignature(String),

    #[error("invalid bound: {0}")]
    InvalidBound(String),

    #[error("invalid orbit: {0}")]
    InvalidOrbit(String),

    #[error("position {position} out of range for a tuple of length {n}")]
    PositionOutOfRange { position: usize, n: usize },

    #[error("formula parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("invalid reduct: {0}")]
    InvalidReduct(String),

    #[error("invalid instance: {}", .0.join("; "))]
    InvalidInstance(Vec<String>),

    #[error("constraint {constraint} has scope of size {size}, wider than the window size {window}")]
    ScopeTooWide { constraint: usize, size: usize, window: usize },

    #[error("arity mismatch: {0}")]
    ArityMismatch(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("invalid orbit action: {0}")]
    InvalidAction(String),

    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),

    #[error("{0}")]
    Unsupported(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Capacity errors map to their own exit code in the command-line front end.
    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity { .. } | Error::OrbitLimit { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
