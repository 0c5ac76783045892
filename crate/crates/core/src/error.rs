use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate generator `{generator}` in algebra `{algebra}`")]
    DuplicateGenerator { algebra: String, generator: String },

    #[error("generator degree must be 0 or 1, got {0}")]
    InvalidDegree(u8),

    #[error("unknown generator `{generator}` in algebra `{algebra}`")]
    UnknownGenerator { algebra: String, generator: String },

    #[error("unknown algebra `{0}`")]
    UnknownAlgebra(String),

    #[error("empty monomial is not allowed in the non-unital regime")]
    EmptyMonomial,

    #[error("factor index {index} out of range for {count} factors")]
    FactorOutOfRange { index: usize, count: usize },

    #[error("monomial `{monomial}` has length {length}, beyond the specified degree {max_degree}")]
    DegreeExceeded {
        monomial: String,
        length: usize,
        max_degree: usize,
    },

    #[error("regime mismatch: {0}")]
    RegimeMismatch(String),

    #[error("functional on `{0}` is not even")]
    NotEven(String),

    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),

    #[error("invalid moment table: {0}")]
    InvalidState(String),

    #[error("scaling factor must be nonzero")]
    ZeroScale,

    #[error("functional is already unital")]
    AlreadyUnital,

    #[error("{axiom} is not applicable to the {kind} product")]
    NotApplicable { axiom: String, kind: String },

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("invalid rational `{0}`")]
    InvalidRational(String),

    #[error("invalid probability space: {0}")]
    InvalidSpace(String),

    #[error("random variables live on different spaces")]
    DomainMismatch,

    #[error("malformed document: {0}")]
    Document(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
