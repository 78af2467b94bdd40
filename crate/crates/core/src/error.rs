use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("alphabet must contain at least one symbol")]
    EmptyAlphabet,
    #[error("duplicate symbol `{0}` in alphabet")]
    DuplicateSymbol(String),
    #[error("symbol `{0}` is not in the alphabet")]
    UnknownSymbol(String),
    #[error("symbol index {index} out of range for an alphabet of size {size}")]
    SymbolOutOfRange { index: usize, size: usize },
    #[error("sub-alphabet symbol `{0}` is not in the alphabet")]
    NotASubAlphabet(String),
    #[error("operation requires an alphabet of size {expected}, got {actual}")]
    AlphabetSize { expected: String, actual: usize },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("matrix is not unitriangular: {0}")]
    NotUnitriangular(String),
    #[error("invalid rational `{0}`")]
    InvalidRational(String),
    #[error("invalid matrix json: {0}")]
    InvalidJson(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unknown rule `{0}`")]
    UnknownRule(String),
}

pub type Result<T> = std::result::Result<T, Error>;
