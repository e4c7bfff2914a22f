use thiserror::Error;

use crate::perm::{ReflectionLabel, SignedPermutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("empty window")]
    Empty,
    #[error("window contains a zero entry")]
    ZeroEntry,
    #[error("magnitude {0} appears more than once")]
    DuplicateMagnitude(u32),
    #[error("value {value} is out of range for rank {rank}")]
    MagnitudeOutOfRange { value: i32, rank: usize },
    #[error("cannot parse `{0}` as a nonzero integer")]
    BadToken(String),
    #[error("unbalanced brackets")]
    UnbalancedBracket,
    #[error("invalid reflection label u_{{{a},{b}}}")]
    InvalidLabel { a: i32, b: i32 },
    #[error("label {label} is out of range for rank {rank}")]
    LabelOutOfRange { label: ReflectionLabel, rank: usize },
    #[error("u_{{{label}}} is undefined for {window}")]
    UndefinedReflection {
        label: ReflectionLabel,
        window: SignedPermutation,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DescentError {
    #[error(transparent)]
    Label(#[from] PermError),
    #[error("label {label} does not fit rank {rank}")]
    LabelOutOfRange { label: ReflectionLabel, rank: usize },
    #[error("not a descent set of any element of B_{rank}")]
    NotADescentSet { rank: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {0} is not in the graph")]
    VertexNotInGraph(i32),
    #[error("unknown graph format `{0}` (expected dot or json)")]
    UnknownFormat(String),
    #[error("unknown graph kind `{0}` (expected alpha or beta)")]
    UnknownKind(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtremalError {
    #[error("rank {n} is outside the supported range {min}..={max}")]
    RankOutOfRange { n: usize, min: usize, max: usize },
    #[error("unknown statistic `{0}` (expected down, up or total)")]
    UnknownStatistic(String),
}
