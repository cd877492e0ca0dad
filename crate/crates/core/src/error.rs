use thiserror::Error;

/// Errors raised by graph, deck, oracle and adversary operations.
///
/// Reconstruction outcomes that merely fail to certify an answer are not
/// errors; they are reported through [`crate::ReconstructionReport`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("no simple {degree}-regular graph on {order} vertices found after {attempts} attempts")]
    RegularGenerationFailed { order: usize, degree: usize, attempts: usize },

    #[error("order {order} exceeds the supported limit {limit} for {what}")]
    Unsupported { what: &'static str, order: usize, limit: usize },

    #[error("malformed graph6 string: {0}")]
    Graph6(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("cannot drop {k} cards from a deck of {len}")]
    TooManyDropped { k: usize, len: usize },

    #[error("too few cards: n = {n}, k = {k} leaves n - 2 - k < 1")]
    TooFewCards { n: usize, k: usize },

    #[error("inconsistent deck: {0}")]
    InconsistentDeck(String),

    #[error("ambiguous: {0}")]
    Ambiguous(String),

    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}
