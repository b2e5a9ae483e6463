use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension must be positive")]
    ZeroDimension,
    #[error("index {index} out of range [1, {dim}]")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("duplicate index {0}")]
    DuplicateIndex(usize),
    #[error("negative value {value} at index {index} in strict mode")]
    NegativeValueInStrictMode { index: usize, value: f64 },
    #[error("non-finite value at index {0}")]
    NonFiniteValue(usize),
    #[error("dataset is empty")]
    EmptyDataset,
    #[error("invalid arguments: {0}")]
    InvalidArgs(String),
    #[error("hash index {index} out of range [1, {n_hashes}]")]
    HashIndexOutOfRange { index: usize, n_hashes: usize },
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("expected {expected} values, got {actual}")]
    WrongLength { expected: usize, actual: usize },
    #[error("input is empty")]
    EmptyInput,
    #[error("every sample is empty; densification is undefined")]
    AllEmpty,
    #[error("both vectors are all-empty in every enumerated configuration")]
    AllEmptyPair,
    #[error("code value overflow while densifying")]
    CodeOverflow,
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("enumeration of {required} configurations exceeds budget {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("strict-mode violation: {0}")]
    StrictModeViolation(String),
    #[error("vectors contain tied values")]
    TiesPresent,
    #[error("vector is not fully dense")]
    NotDense,
    #[error("code vectors have inconsistent lengths")]
    InconsistentCodeLength,
    #[error("index is empty")]
    EmptyIndex,
    #[error("query label {0} does not occur in the index")]
    UnknownLabel(i64),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}
