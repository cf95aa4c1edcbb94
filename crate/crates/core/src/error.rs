use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("fields live on different grids")]
    GridMismatch,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("linear solver did not converge after {iterations} iterations (relative residual {residual:e})")]
    NotConverged { iterations: usize, residual: f64 },

    #[error("dense oracle limited to {cap} interior nodes, grid has {nodes}")]
    SizeCap { nodes: usize, cap: usize },

    #[error("projection is not idempotent on the update (defect {defect:e})")]
    NotIdempotent { defect: f64 },

    #[error("signal term is not compatible with homogeneous boundary data: {0}")]
    BoundaryIncompatible(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("{context}: {source}")]
    Solver {
        context: String,
        #[source]
        source: Box<Error>,
    },

    #[error("run aborted after {} accepted updates: {source}", partial.trace.updates())]
    RunAborted {
        partial: Box<crate::stopping::StoppedRun>,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Attach the parameter tuple that triggered a solver failure.
    pub fn in_context(self, context: impl Into<String>) -> Self {
        Error::Solver {
            context: context.into(),
            source: Box::new(self),
        }
    }

    /// True for failures that originate in a linear solve.
    pub fn is_solver_failure(&self) -> bool {
        match self {
            Error::NotConverged { .. } => true,
            Error::Solver { source, .. } | Error::RunAborted { source, .. } => source.is_solver_failure(),
            _ => false,
        }
    }
}
