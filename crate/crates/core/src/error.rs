use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u32),
    #[error("generators {0:?} do not generate a numerical semigroup (gcd {1})")]
    NotNumericalSemigroup(Vec<u32>, u32),
    #[error("{0} is not an element of the semigroup")]
    NotInSemigroup(u32),
    #[error("ideals live in different ambient rings")]
    AmbientMismatch,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("ideal is not primary to the maximal ideal (no pure power of variable {0})")]
    NotFiniteColength(usize),
    #[error("local colength did not stabilize up to m^{0}")]
    NoStabilization(u32),
    #[error("containment failed: generator {0} is not in the larger ideal")]
    ContainmentFailed(usize),
    #[error("truncation too short to certify a polynomial numerator")]
    TruncationTooShort,
    #[error("length grid did not reach its polynomial regime after {0} escalations")]
    FitUnstable(u32),
    #[error("no sampled reduction certified up to n = {0}")]
    NoReductionFound(u32),
    #[error("joint reduction is not certified")]
    UncertifiedJointReduction,
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("{0}")]
    Semantic(String),
}

pub type Result<T> = std::result::Result<T, Error>;
