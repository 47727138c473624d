use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("duplicate symbol `{0}`")]
    DuplicateSymbol(String),

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("table of `{symbol}` has {found} entries, expected {expected}")]
    TableLength {
        symbol: String,
        expected: usize,
        found: usize,
    },

    #[error("element {element} out of range for carrier of size {size}")]
    OutOfRange { element: usize, size: usize },

    #[error("carrier must be non-empty")]
    EmptyCarrier,

    #[error("{what} needs {needed}, budget is {limit}")]
    Budget {
        what: &'static str,
        needed: usize,
        limit: usize,
    },

    #[error("signature mismatch")]
    SignatureMismatch,

    #[error("carrier mismatch: {0}")]
    CarrierMismatch(&'static str),

    #[error("map has length {found}, expected {expected}")]
    MapLength { expected: usize, found: usize },

    #[error("map does not commute with `{symbol}` at arguments {args:?}")]
    NotHomomorphism { symbol: String, args: Vec<usize> },

    #[error("subset is not closed under `{0}`")]
    NotClosed(String),

    #[error("invalid context: {0}")]
    InvalidContext(String),

    #[error("relation is not compatible with the operations of `{0}`")]
    NotCompatible(String),

    #[error("malformed identity: {0}")]
    MalformedIdentity(String),
}
