use thiserror::Error;

/// Errors raised by the cohomology engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("ill-defined homomorphism: {0}")]
    IllDefinedHom(String),

    #[error("element of {found} used where an element of {expected} was expected")]
    OwnerMismatch { expected: String, found: String },

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("not a chain complex: boundary[{dim}] * boundary[{next}] is nonzero at entry ({row}, {col})")]
    NotAComplex {
        dim: usize,
        next: usize,
        row: usize,
        col: usize,
    },

    #[error("not a chain map: square in dimension {dim} fails at entry ({row}, {col})")]
    NotAChainMap { dim: usize, row: usize, col: usize },

    #[error("complex has no basepoint")]
    MissingBasepoint,

    #[error("map does not preserve basepoints")]
    NotPointed,

    #[error("unknown space `{0}`")]
    UnknownSpace(String),

    #[error("no simplicial model for `{0}`")]
    NoSimplicialModel(String),

    #[error("invalid simplicial complex: {0}")]
    InvalidSimplicialComplex(String),

    #[error("invalid cover: {0}")]
    InvalidCover(String),

    #[error("cochain mismatch: {0}")]
    CochainMismatch(String),

    #[error("sequence error: {0}")]
    Sequence(String),

    #[error("bad expression: {0}")]
    Expression(String),

    #[error("invalid json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}
