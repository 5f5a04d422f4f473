use thiserror::Error;

/// Failures raised by the kernel.
///
/// `NotGeneric` is the expected failure mode on measure-zero inputs: the
/// statements implemented here hold for generic matrices, and callers that
/// sample at random are expected to resample when they see it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("attempted to invert zero")]
    ZeroInverse,
    #[error("not generic: {0}")]
    NotGeneric(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("not in the Gauss cell B-U: {0}")]
    NotInGaussCell(String),
    #[error("matrix lies in G^{found}, expected G^{expected}")]
    WrongCell { expected: String, found: String },
    #[error("not in the reduced cell L^{0}")]
    NotInReducedCell(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("two evaluation routes disagree: {0}")]
    Inconsistent(String),
}

impl Error {
    pub fn not_generic(what: impl Into<String>) -> Self {
        Error::NotGeneric(what.into())
    }

    /// True for the failures a random-sampling harness should retry on.
    pub fn is_genericity(&self) -> bool {
        matches!(
            self,
            Error::NotGeneric(_) | Error::ZeroInverse | Error::NotInGaussCell(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
