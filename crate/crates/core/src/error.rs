use thiserror::Error;

/// Errors produced by the numeric, symbolic and graph routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("precision not met: requested 1e-{requested}, certified bound {bound:e}")]
    PrecisionNotMet { requested: u32, bound: f64 },

    #[error("divergent index {0}: the last entry must be at least 2")]
    DivergentIndex(String),

    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("graph too large: {edges} edges, limit is {limit}")]
    TooLarge { edges: usize, limit: usize },

    #[error("graph is not primitive log-divergent")]
    NotPrimitive,

    #[error("non-finite integrand value in shard {shard} at sample {sample} (point {point:?})")]
    NonFiniteSample {
        shard: usize,
        sample: u64,
        point: Vec<f64>,
    },

    #[error("Newton iteration did not converge after {0} iterations")]
    NoConvergence(usize),

    #[error("schema error: {0}")]
    Schema(String),

    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
