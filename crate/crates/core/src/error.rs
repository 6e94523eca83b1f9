use thiserror::Error;

use crate::hypergraph::PropertyRViolation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index {value} at position {position} is outside 1..={n}")]
    IndexOutOfRange {
        position: usize,
        value: usize,
        n: usize,
    },

    #[error("order must be at least 2, got {0}")]
    InvalidOrder(usize),

    #[error("dimension must be at least 1, got {0}")]
    InvalidDimension(usize),

    #[error("shape mismatch: expected order {expected_m} dimension {expected_n}, found order {found_m} dimension {found_n}")]
    ShapeMismatch {
        expected_m: usize,
        expected_n: usize,
        found_m: usize,
        found_n: usize,
    },

    #[error("symmetry violation at {key}: conflicting values {first} and {second}")]
    SymmetryViolation {
        key: String,
        first: String,
        second: String,
    },

    #[error("base must be non-empty")]
    EmptyBase,

    #[error("vertex set {0} is not a valid subset of the vertex range")]
    InvalidVertexSet(String),

    #[error("not a bijection on 1..={n}: {reason}")]
    NotBijection { n: usize, reason: String },

    #[error("coordinate {position} has value {value}, expected 0 or 1")]
    NonBinary { position: usize, value: u64 },

    #[error("vector length {found} does not match dimension {expected}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("rank undefined: the edge set is empty")]
    EmptyEdgeSet,

    #[error("certificate entry {0} has an empty support or zero multiplicity")]
    InvalidCertificate(usize),

    #[error("Property R fails: edge {} is present but {} is missing", .0.edge, .0.missing)]
    PropertyRViolated(PropertyRViolation),

    #[error("{what}: {actual} exceeds the limit of {limit}")]
    CapabilityExceeded {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
