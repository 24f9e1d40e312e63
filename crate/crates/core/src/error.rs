use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("index {index} out of range (bound {bound})")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("invalid jet space: {0}")]
    InvalidSpace(String),

    #[error("{op} needs degree > {min}, got {degree}")]
    DegreeTooLow {
        op: &'static str,
        degree: usize,
        min: usize,
    },

    #[error("order mismatch: {0}")]
    Order(String),

    #[error("not polynomial in the fibre coordinates: {0}")]
    NotPolynomial(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("cannot evaluate: {0}")]
    Evaluation(String),

    /// An identity that is supposed to hold by construction did not.
    #[error("internal identity check failed: {0}")]
    Identity(String),

    #[error("{line}:{col}: {msg}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },

    /// A request that does not fit the input, e.g. an unknown form name.
    #[error("{0}")]
    Usage(String),
}

impl Error {
    /// True for failures of mathematical preconditions (as opposed to input syntax or usage).
    pub fn is_mathematical(&self) -> bool {
        !matches!(self, Error::Parse { .. } | Error::Usage(_))
    }
}
