use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid rational {0:?}")]
    InvalidRational(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("zero divisor")]
    ZeroDivisor,
    #[error("nothing to eliminate")]
    NothingToEliminate,
    #[error("zero polynomial has no resultant")]
    ZeroResultantInput,
    #[error("a not determined")]
    ANotDetermined,
    #[error("malformed quadrinomial: {0}")]
    Malformed(String),
    #[error("unknown id {0:?}")]
    UnknownId(String),
    #[error("{id}: parameter {value} is excluded ({reason})")]
    Excluded {
        id: String,
        value: String,
        reason: String,
    },
    #[error("{0} is not a parametric case; use it without a parameter")]
    NotParametric(String),
    #[error("{0} needs a parameter")]
    NeedsParameter(String),
    #[error("curve {0} has no stored point map")]
    NoMap(String),
    #[error("curve data: {0}")]
    CurveData(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }

    /// True for errors caused by the caller's input rather than by this crate.
    pub fn is_usage(&self) -> bool {
        !matches!(self, Error::Internal(_))
    }
}
