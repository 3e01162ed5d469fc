use thiserror::Error;

/// Errors produced across the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// `1 + theta * w_i = 0` for the observation at `index`.
    #[error("score has a pole at theta = {theta} (observation {index})")]
    Pole { index: usize, theta: f64 },

    /// An exact-only operation received approximate scalars, or the two
    /// operands have different scalar kinds.
    #[error("scalar kind mismatch: {0}")]
    ModeMismatch(String),

    /// Every shift value is identical; the score equation is excluded from
    /// the ML-degree formula and the MLE sits at the boundary.
    #[error("all {n} shift values equal {value}; MLE is the boundary point {boundary_mle}")]
    AllEqual {
        n: usize,
        value: String,
        boundary_mle: f64,
    },

    /// No observation carries information about theta.
    #[error("no usable observations ({dropped} degenerate of {n}); likelihood is flat in theta")]
    NoData { n: usize, dropped: usize },

    #[error("parse error: {0}")]
    Parse(String),

    /// A malformed row in a dataset file. `line` is 1-based.
    #[error("line {line}: {message}")]
    Csv { line: u64, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
