use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("operation requires a field base ring, got {0}")]
    NotAField(String),
    #[error("operation requires the integers, got {0}")]
    NotIntegers(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("differential does not square to zero in degree {0}")]
    NotAComplex(i64),
    #[error("negative beta exponent: {0}")]
    TwistConstraint(String),
    #[error("not a chain map: {0}")]
    NotAChainMap(String),
    #[error("not a filtered object: {0}")]
    NotFiltered(String),
    #[error("not a morphism: {0}")]
    NotAMorphism(String),
    #[error("invalid Thomason data: {0}")]
    Thomason(String),
    #[error("invalid witness: {0}")]
    Witness(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
