use thiserror::Error;

/// Errors reported by the solver, the generators and the file loaders.
#[derive(Debug, Error)]
pub enum WkamError {
    #[error("instance has no points")]
    EmptyInstance,

    #[error("{op} requires a total cost (no +inf entries)")]
    GraphMode { op: &'static str },

    #[error("point {0} has no finite outgoing edge")]
    DeadEnd(usize),

    #[error("operation would produce -inf")]
    NegativeInfinity,

    #[error("value function has {found} entries, instance has {expected} points")]
    LengthMismatch { expected: usize, found: usize },

    #[error("value function is not finite at point {0}")]
    NonFiniteValue(usize),

    #[error("function is not dominated: violated at pair ({0}, {1})")]
    NotDominated(usize, usize),

    #[error("function is not a negative weak KAM solution at point {0}")]
    NotASolution(usize),

    #[error("power must be at least 1")]
    ZeroPower,

    #[error("no convergence after {0} iterations")]
    NonConvergence(usize),

    #[error("empty list")]
    EmptyList,

    #[error("instance too large for brute force: {what} (limit {limit})")]
    SizeGuard { what: String, limit: usize },

    #[error("instance has no metric")]
    NoMetric,

    #[error("invalid metric: {0}")]
    InvalidMetric(String),

    #[error("invalid chain: {0}")]
    InvalidChain(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("construction failed: {0}")]
    ConstructionFailed(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl WkamError {
    /// True for errors caused by the caller's input rather than by the solver.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            WkamError::EmptyInstance
                | WkamError::GraphMode { .. }
                | WkamError::DeadEnd(_)
                | WkamError::LengthMismatch { .. }
                | WkamError::NonFiniteValue(_)
                | WkamError::NotDominated(..)
                | WkamError::NotASolution(_)
                | WkamError::ZeroPower
                | WkamError::EmptyList
                | WkamError::SizeGuard { .. }
                | WkamError::NoMetric
                | WkamError::InvalidMetric(_)
                | WkamError::InvalidChain(_)
                | WkamError::InvalidArgument(_)
                | WkamError::Parse(_)
                | WkamError::Io(_)
                | WkamError::Json(_)
        )
    }
}

pub type Result<T, E = WkamError> = std::result::Result<T, E>;
