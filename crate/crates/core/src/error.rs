use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic {0} is even; only odd characteristic is supported")]
    EvenCharacteristic(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{m} exceeds the table ceiling 2^18")]
    OrderTooLarge { p: u64, m: u32 },
    #[error("internal: {0}")]
    Internal(String),

    #[error("zero has no multiplicative inverse")]
    InverseOfZero,
    #[error("quadratic character is undefined at zero")]
    CharacterOfZero,
    #[error("{0} is not a square in the field")]
    NotASquare(String),

    #[error("point {0} is not in the evaluation set")]
    PointNotInSet(String),
    #[error("duplicate evaluation point {0}")]
    DuplicatePoint(String),
    #[error("evaluation set of size {size} exceeds q+1 = {max}")]
    SetTooLarge { size: usize, max: u64 },
    #[error("invalid code: {0}")]
    InvalidCode(String),
    #[error("subgroup order {n} does not divide q-1 = {order}")]
    NotASubgroupOrder { n: u64, order: u64 },

    #[error("invalid construction parameters: {0}")]
    InvalidParams(String),
    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("serialization: {0}")]
    Serialization(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Serialization(e.to_string())
    }
}
