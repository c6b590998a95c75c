use thiserror::Error;

use crate::field::FieldSpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0} is not a unit of the local ring")]
    NonUnit(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("composite {0} is not zero (entry ({1}, {2}) = {3})")]
    CompositeNotZero(&'static str, usize, usize, String),
    #[error("invalid chain map: {0}")]
    InvalidChainMap(String),
    #[error("complex is not a direct sum of trivial complexes")]
    NotTrivial,
    #[error("complex does not have finite length cohomology")]
    NotFiniteLength,
    #[error("matrix {0} is not invertible over the local ring")]
    NotInvertible(&'static str),
    #[error("data does not define a complex: {0}")]
    NotAComplex(String),
    #[error("differential {0} is not minimal")]
    NotMinimal(&'static str),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// The message without the variant prefix, for re-wrapping.
    pub fn message(&self) -> String {
        match self {
            Error::Parse(m) => m.clone(),
            other => other.to_string(),
        }
    }
}
