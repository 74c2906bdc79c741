use num_bigint::BigUint;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A word (or spacer row) would exceed the materialization cap.
    #[error("materialization needs {required} symbols but the cap is {cap}")]
    Capacity { required: BigUint, cap: u64 },

    #[error("invalid spacer row: {0}")]
    InvalidRow(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("spacer bound {bound} exceeded at stage {stage}, index {index} (value {value})")]
    SpacerBound {
        bound: u64,
        stage: usize,
        index: usize,
        value: u64,
    },

    #[error("factor counts changed between depth {depth} and {next} at length {length}: {before} vs {after}")]
    Stabilization {
        depth: usize,
        next: usize,
        length: usize,
        before: u64,
        after: u64,
    },

    #[error("precondition failed at stage {stage}{}: {reason}", index.map(|i| format!(", index {i}")).unwrap_or_default())]
    Precondition {
        stage: usize,
        index: Option<usize>,
        reason: String,
    },

    #[error("unknown family `{0}`")]
    UnknownFamily(String),

    #[error("growth table exhausted: {0}")]
    TableExhausted(String),

    #[error("classification failed: {0}")]
    Classification(String),

    #[error("limits not determinable: {0}")]
    Indeterminate(String),

    #[error("spec format: {0}")]
    SpecFormat(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn capacity(required: impl Into<BigUint>, cap: u64) -> Self {
        Error::Capacity {
            required: required.into(),
            cap,
        }
    }

    pub(crate) fn precondition(stage: usize, index: Option<usize>, reason: impl Into<String>) -> Self {
        Error::Precondition {
            stage,
            index,
            reason: reason.into(),
        }
    }

    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity { .. })
    }
}
