use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    MalformedRecord { line: usize, message: String },

    #[error("duplicate record id `{0}`")]
    DuplicateId(String),

    #[error("query error at offset {offset}: {message}")]
    Query { offset: usize, message: String },

    #[error("invalid hypergraph: {0}")]
    InvalidHypergraph(String),

    #[error("unknown node `{0}`")]
    UnknownNode(String),

    #[error("matrix is not symmetric (|a[{row}][{col}] - a[{col}][{row}]| = {delta:e})")]
    NotSymmetric { row: usize, col: usize, delta: f64 },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("power-law fit needs at least 3 distinct sizes in range, found {0}")]
    TooFewPoints(usize),

    #[error("size {0} is not covered by any bin of the gain table")]
    UncoveredSize(usize),

    #[error("invalid expanded graph: {0}")]
    InvalidGraph(String),

    #[error("layout diverged: non-finite position at iteration {iteration}")]
    NonFinite { iteration: usize },

    #[error("invalid layout: {0}")]
    InvalidLayout(String),

    #[error("views do not derive from the same hypergraph ({from} vs {to})")]
    ProvenanceMismatch { from: String, to: String },

    #[error("value {0} is outside [0, 1]")]
    OutOfUnitInterval(f64),

    #[error("invalid image: {0}")]
    InvalidImage(String),

    #[error("stage `{stage}` failed: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    pub(crate) fn in_stage(self, stage: &'static str) -> Self {
        Error::Stage { stage, source: Box::new(self) }
    }
}
