use thiserror::Error;

/// Errors raised anywhere in the pipeline.
///
/// The split between validation errors (bad user input) and internal
/// failures (broken invariants) drives the CLI exit code.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("not homogeneous")]
    NotHomogeneous,
    #[error("not bihomogeneous")]
    NotBihomogeneous,
    #[error("degree of zero undefined")]
    ZeroDegree,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("degree validation failed: {0}")]
    Degree(String),
    #[error("height < 2: maximal minors share the common factor {0}")]
    HeightLessThanTwo(String),
    #[error("all maximal minors vanish")]
    ZeroMinors,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("not a regular sequence")]
    NotRegularSequence,
    #[error("not in the ideal")]
    NotInIdeal,
    #[error("budget exhausted: found {found} of {expected} kernel generators up to degree {budget}")]
    BudgetExhausted {
        found: usize,
        expected: usize,
        budget: i64,
    },
    #[error("kernel degree sum {found} does not match the expected {expected}")]
    DegreeSumMismatch { found: i64, expected: i64 },
    #[error("normalization failed: constant rows of xi have rank {rank} < {needed}")]
    NormalizationFailed { rank: usize, needed: usize },
    #[error("unsolvable membership: {0}")]
    Unsolvable(String),
    #[error("certificate failed: {0}")]
    Certificate(String),
    #[error("iteration cap of {0} reached")]
    IterationCap(usize),
    #[error("{0}")]
    Io(String),
}

impl Error {
    /// True for errors caused by the input rather than by a broken invariant.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::Syntax { .. }
                | Error::UnknownVariable(_)
                | Error::NotHomogeneous
                | Error::NotBihomogeneous
                | Error::ZeroDegree
                | Error::DimensionMismatch(_)
                | Error::InvalidField(_)
                | Error::Degree(_)
                | Error::HeightLessThanTwo(_)
                | Error::ZeroMinors
                | Error::Precondition(_)
                | Error::Invalid(_)
                | Error::NotRegularSequence
                | Error::NotInIdeal
                | Error::Io(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
