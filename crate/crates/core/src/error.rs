use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("series has zero constant term and no multiplicative inverse")]
    NonUnit,
    #[error("composition needs an inner series with zero constant term")]
    CompositionDomain,
    #[error("series is not proper: needs f(0) = 0 and f'(0) != 0")]
    NotProper,
    #[error("rational power needs a base with constant term 1")]
    BaseNotUnit1,
    #[error("exp needs a series with zero constant term")]
    ExpDomain,
    #[error("log needs a series with constant term 1")]
    LogDomain,
    #[error("index {index} exceeds truncation order {trunc}")]
    OutOfRange { index: usize, trunc: usize },
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("operator is not homogeneous: monomials have mixed excess")]
    NotHomogeneous,
    #[error("prefunction g must have g(0) != 0")]
    NotUnit,
    #[error("series f must have zero constant term")]
    HasConstantTerm,
    #[error("reference sequences of the operands differ")]
    RefSeqMismatch,
    #[error("invalid reference sequence: {0}")]
    InvalidRefSeq(String),
    #[error("degree {0} is not supported here (needs n >= 2)")]
    UnsupportedDegree(i64),
    #[error("operator does not raise the order; the exponential series would not terminate")]
    DegreeTooLow,
    #[error("translation is only defined here on polynomial input")]
    NotPolynomial,
    #[error("operator has negative excess {0}")]
    NegativeExcess(i64),
    #[error("operands use different lambda values")]
    LambdaMismatch,
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
