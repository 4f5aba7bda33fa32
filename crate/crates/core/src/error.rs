use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid chain length {0}: need at least one site")]
    InvalidChainLength(usize),

    #[error("site {site} out of range 1..={n_sites}")]
    SiteOutOfRange { site: usize, n_sites: usize },

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("time {t} outside the validity interval [{min}, {max}]")]
    TimeOutOfRange { t: i64, min: i64, max: i64 },

    #[error("{n} qubits exceeds the dense simulator cap of {cap}")]
    TooManyQubits { n: usize, cap: usize },

    #[error("sites must be distinct, got {0:?}")]
    SiteCollision(Vec<usize>),

    #[error("site {0} is its own mirror image; the mirror selection cancels there")]
    SelfMirrorSite(usize),

    #[error("invalid gate: {0}")]
    InvalidGate(String),

    #[error("invalid logical register count {0}: need at least one logical qubit")]
    InvalidLogicalCount(usize),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("readout layout violation: {0}")]
    Layout(String),

    #[error("corrupted readout transcript: {0}")]
    CorruptTranscript(String),

    #[error("constraint system {0}")]
    Constraints(String),

    #[error("invalid adjacency matrix: {0}")]
    InvalidAdjacency(String),
}

impl Error {
    /// Attaches a line number to a parse error produced without one.
    pub(crate) fn at_line(self, line: usize) -> Self {
        match self {
            Error::Parse { message, .. } => Error::Parse { line, message },
            other => Error::Parse {
                line,
                message: other.to_string(),
            },
        }
    }
}
