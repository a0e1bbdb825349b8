use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("lattice mismatch: expected lattice [{expected}], found [{found}]")]
    LatticeMismatch { expected: String, found: String },

    #[error("non-integral pairing of {character} with {functional}: {value}")]
    NonIntegralPairing {
        character: String,
        functional: String,
        value: String,
    },

    #[error("unknown divisor label `{0}`")]
    ForeignLabel(String),

    #[error("unknown basis label `{0}`")]
    UnknownBasisLabel(String),

    #[error("character is outside the Picard sublattice: {0}")]
    OutsidePicard(String),

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("invalid family parameters: {0}")]
    InvalidParameters(String),

    #[error("model for this family is provisional: {0}")]
    ProvisionalModel(String),

    #[error("oracle: {0}")]
    Oracle(String),

    #[error("oracle instability: {0}")]
    OracleUnstable(String),

    #[error("limit does not exist along `{curve}`: negative power of t in block {block}")]
    NoLimit { curve: String, block: usize },

    #[error("parse error: {0}")]
    Parse(String),
}
