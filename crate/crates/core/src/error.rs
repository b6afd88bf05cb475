use thiserror::Error;

/// Errors raised by the library.
///
/// Variants fall into three families that the command line maps onto exit
/// codes: bad input, coverage/validation failures of data files, and internal
/// consistency failures (a mathematical certificate did not hold).
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("quadratic form is not positive definite")]
    NotPositiveDefinite,

    #[error("sublattice is not invariant under the operator")]
    NotInvariant,

    #[error("restriction has non-integral coordinates")]
    NonIntegral,

    #[error("polynomial is not squarefree")]
    NotSquarefree,

    #[error("polynomial is reducible")]
    Reducible,

    #[error("coverage gap: missing levels {0:?}")]
    CoverageGap(Vec<u64>),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}

impl Error {
    /// Process exit status: 1 for bad input, 2 for data and coverage
    /// problems, 3 for internal failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidInput(_) | Error::NotPrime(_) => 1,
            Error::CoverageGap(_) | Error::Parse { .. } | Error::Validation(_) | Error::Io(_) => 2,
            _ => 3,
        }
    }
}
