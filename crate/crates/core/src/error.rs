use thiserror::Error;

/// Errors raised by the library.
///
/// `is_usage` separates caller mistakes (bad vertex ids, malformed
/// witnesses, out-of-range parameters) from domain failures (the instance
/// is outside a theorem's hypotheses, or has no LTD-set at all).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LtdError {
    #[error("vertex {vertex} out of range for graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("no LTD-set exists: vertex {0} is isolated")]
    IsolatedVertex(usize),
    #[error("graph has twins {0} and {1}")]
    HasTwins(usize, usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is not {0}")]
    NotInClass(&'static str),
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),
    #[error("graph belongs to the excluded family F_tdom ({0})")]
    ExcludedFamily(&'static str),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("construction invariant violated: {0}")]
    Invariant(String),
    #[error("unsupported instance: {0}")]
    Unsupported(String),
    #[error("random generation failed after {0} attempts")]
    GenerationFailed(usize),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl LtdError {
    /// True for errors caused by malformed input rather than by the instance.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            LtdError::VertexOutOfRange { .. }
                | LtdError::SelfLoop(_)
                | LtdError::InvalidWitness(_)
                | LtdError::InvalidParameter(_)
                | LtdError::Parse { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, LtdError>;
