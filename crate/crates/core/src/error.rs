use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("malformed graph6: {0}")]
    Graph6(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("graph has {n} vertices, above the dense-size ceiling of {max}")]
    TooLarge { n: usize, max: usize },

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {residual:e})")]
    NonConvergence { sweeps: usize, residual: f64 },

    /// Exact and numeric evidence disagree beyond tolerance.
    #[error("diagnostic failure: {0}")]
    Diagnostic(String),

    #[error("internal arithmetic inconsistency: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    /// True for errors caused by bad user input rather than a failed check.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. }
                | Error::Graph6(_)
                | Error::InvalidGraph(_)
                | Error::InvalidParameter(_)
                | Error::TooLarge { .. }
        )
    }
}
