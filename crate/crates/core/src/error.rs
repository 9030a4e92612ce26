use thiserror::Error;

/// Errors raised by graph construction, edits, enumeration and verification.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed rotation system: {0}")]
    Malformed(String),

    #[error("unknown edge {0}")]
    UnknownEdge(String),

    #[error("unknown vertex {0}")]
    UnknownVertex(String),

    #[error("edge {0} is a loop; a proper edge is required")]
    LoopEdge(String),

    #[error("gap index {gap} out of range for vertex {vertex} of degree {degree}")]
    GapOutOfRange {
        vertex: String,
        gap: usize,
        degree: usize,
    },

    #[error("unknown catalog graph `{0}`")]
    UnknownCatalog(String),

    #[error("catalog graph `{0}` needs a size parameter")]
    MissingSize(String),

    #[error("invalid size {n} for catalog graph `{name}`")]
    InvalidSize { name: String, n: usize },

    #[error("invalid twuality word `{0}`")]
    InvalidWord(String),

    #[error("interpolation is undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("edge subset refers to edge {edge} but the graph has {edges} edges")]
    SubsetOutOfRange { edge: usize, edges: usize },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("inconsistent input: {0}")]
    Inconsistent(String),

    #[error("enumeration over 2^{bits} subsets exceeds the cap of 2^{cap}")]
    CapExceeded { bits: usize, cap: usize },

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    /// Broad failure class, used by the command line front end to pick an exit code.
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Parse { .. } | Error::Malformed(_) => ErrorClass::Parse,
            Error::CapExceeded { .. } => ErrorClass::Cap,
            _ => ErrorClass::Precondition,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Parse,
    Precondition,
    Cap,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
