use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("generators have inconsistent degrees ({expected} vs {found})")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("capacity exceeded: {what} needs {needed}, bound is {bound}")]
    Capacity { what: &'static str, needed: u128, bound: u128 },
    #[error("group order overflows 128 bits")]
    OrderOverflow,
    #[error("{0} is not an element of the group")]
    NotMember(String),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {p} does not divide the group order {order}")]
    PrimeDoesNotDivide { p: u64, order: u128 },
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("component search failed: {0}; supply an L hint")]
    NeedsHint(String),
    #[error("catalog: {0}")]
    Catalog(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity { .. } | Error::OrderOverflow)
    }
}
