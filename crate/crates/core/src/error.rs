use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("variable tables differ: [{left}] vs [{right}]")]
    VarTableMismatch { left: String, right: String },

    #[error("invalid variable table: {0}")]
    InvalidVarTable(String),

    #[error("variable `{0}` has no image in the assignment")]
    UnassignedVariable(String),

    #[error("polynomial is not symmetric; witness permutation {witness:?}")]
    NotSymmetric { witness: Vec<usize> },

    #[error("rank {rank} outside the supported range {min}..={max}")]
    RankOutOfRange { rank: usize, min: usize, max: usize },

    #[error("expected {expected} input classes, got {got}")]
    RankMismatch { expected: usize, got: usize },

    #[error("index {index} outside 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("partitions of different weight ({0} vs {1}) are not ordered")]
    WeightMismatch(u32, u32),

    #[error("invalid partition {0:?}: parts must be positive and weakly decreasing")]
    InvalidPartition(Vec<u32>),

    #[error("partition {partition:?} does not fit in {n} variables")]
    PartitionTooLarge { partition: Vec<u32>, n: usize },

    #[error("invalid toy ring: {0}")]
    InvalidRing(String),

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// A computed quantity contradicts an identity it must satisfy.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Errors caused by bad caller input rather than a failed computation.
    pub fn is_usage(&self) -> bool {
        !matches!(self, Error::Inconsistent(_) | Error::Io(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
