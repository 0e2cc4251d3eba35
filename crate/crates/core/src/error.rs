use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised across the library.
///
/// Variants are grouped into precondition failures (bad input) and limit
/// failures (a size cap was hit); see [`Error::is_limit`].
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("port ({vertex}, {port}) appears in more than one pairing")]
    DuplicatePort { vertex: usize, port: usize },

    #[error("port ({vertex}, {port}) is not paired")]
    DanglingPort { vertex: usize, port: usize },

    #[error("port ({vertex}, {port}) is out of range for n = {n}, k = {k}")]
    PortOutOfRange { vertex: usize, port: usize, n: usize, k: usize },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("graph is disconnected: vertices {0} and {1} are not joined by a path")]
    Disconnected(usize, usize),

    #[error("graph is bipartite; the walk does not converge (a side of the bipartition has {} vertices)", .side.len())]
    Bipartite { side: Vec<usize> },

    #[error("{what} = {actual} exceeds the cap of {cap}")]
    CapExceeded { what: &'static str, actual: u128, cap: u128 },

    #[error("eigensolver did not converge: residual {residual:e} after {iterations} iterations")]
    NoConvergence { residual: f64, iterations: usize },

    #[error("spectral and combinatorial connectivity disagree: {0}")]
    Inconsistent(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    Mismatch { expected: usize, found: usize },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("element {0} is not in the set acted upon")]
    NotClosed(String),

    #[error("no candidate met the threshold; best value found was {best}")]
    ThresholdUnmet { best: f64 },

    #[error("certificate refused: {0}")]
    Refused(String),
}

impl Error {
    /// True for errors caused by a size cap rather than invalid input.
    pub fn is_limit(&self) -> bool {
        matches!(self, Error::CapExceeded { .. } | Error::NoConvergence { .. })
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub(crate) fn cap(what: &'static str, actual: impl Into<u128>, cap: impl Into<u128>) -> Self {
        Error::CapExceeded {
            what,
            actual: actual.into(),
            cap: cap.into(),
        }
    }
}
