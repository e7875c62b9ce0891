use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("p = {p} is not congruent to 1 modulo ell = {ell}")]
    BadCongruence { p: u32, ell: u32 },
    #[error("ell = {0} is smaller than 2")]
    EllTooSmall(u32),
    #[error("rank n must be at least 1")]
    RankTooSmall,
    #[error("extension degree must be at least 1")]
    BadDegree,
    #[error("linear system has no solution")]
    NoSolution,
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("objects live over different contexts")]
    ContextMismatch,
    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("the zero vector is not a projective point")]
    ZeroPoint,
    #[error("size budget {budget} admits no module")]
    BudgetTooSmall { budget: usize },
    #[error("variety sets are sampled at different extension degrees")]
    DegreeMismatch,
    #[error("module relation violated: {0}")]
    Validation(String),
    #[error("malformed input: {0}")]
    Format(String),
    #[error("unknown suite '{0}'")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
