use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {0} exceeds 2^16")]
    OrderTooLarge(u64),
    #[error("a modulus is required for extension degree {0}")]
    MissingModulus(u32),
    #[error("a prime field takes no modulus")]
    UnexpectedModulus,
    #[error("modulus must be monic of degree {0}")]
    BadModulus(u32),
    #[error("modulus is reducible")]
    ReducibleModulus,
    #[error("element code {code} is out of range for a field of order {q}")]
    ElementOutOfRange { code: u32, q: u32 },
    #[error("zero has no inverse")]
    ZeroInverse,
    #[error("the zero polynomial cannot be made monic")]
    ZeroPolynomial,
    #[error("out-of-order step: expected sequence {expected} at position {position}, got {got}")]
    OutOfOrder {
        expected: usize,
        position: usize,
        got: usize,
    },
    #[error("operation requires a completed position")]
    NotAtBoundary,
    #[error("pair (I, S) = ({i}, {s}) is not admissible{detail}")]
    Inadmissible { i: String, s: String, detail: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("hexagon {hexagon}: discharge phase did not settle by position {position}")]
    GuardBreach { hexagon: usize, position: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }
}
