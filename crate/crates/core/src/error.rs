use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different polynomial rings")]
    RingMismatch,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("coefficient {coefficient} is not divisible by {divisor}")]
    NotDivisible { coefficient: String, divisor: String },

    #[error("polynomial division is not exact")]
    InexactDivision,

    #[error("no image given for variable `{0}`")]
    MissingImage(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("invalid variable set: {0}")]
    InvalidVariables(String),

    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },

    #[error("invalid Frobenius lift: {0}")]
    InvalidLift(String),

    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),

    #[error("operation requires {0}")]
    Unsupported(&'static str),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("step budget of {budget} exceeded")]
    BudgetExceeded { budget: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
