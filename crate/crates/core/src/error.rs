use crate::exact::{BigNat, SignedBig};
use crate::lattice::{GridPoint, SegmentId};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid step character {0:?}; paths use only 'R' and 'U'")]
    InvalidStepChar(char),

    #[error("no monotone path from ({}, {}) to ({}, {})", from.x, from.y, to.x, to.y)]
    InvalidRectangle { from: GridPoint, to: GridPoint },

    #[error("path has {len} steps, operation needs at least {needed}")]
    PathTooShort { len: usize, needed: usize },

    #[error("path does not intersect segment {0}")]
    NoIntersection(SegmentId),

    #[error("division by zero: {0} / 0")]
    DivisionByZero(BigNat),

    #[error("{num} is not divisible by {den} (remainder {rem})")]
    ExactDivision {
        num: BigNat,
        den: BigNat,
        rem: BigNat,
    },

    #[error("alternating sum collapsed to the negative value {0}")]
    NegativeSum(SignedBig),

    #[error("shift parameter s={s} outside supported range 0..={max}")]
    ShiftOutOfRange { s: u64, max: u64 },

    #[error("family level {0} outside -2..=2")]
    LevelOutOfRange(i64),

    #[error("malformed path argument: {0}")]
    BadPath(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("enumeration budget exceeded: {needed} paths > budget {budget}")]
    BudgetExceeded { needed: BigNat, budget: u64 },

    #[error("invalid range: {0}")]
    InvalidRange(String),

    #[error("invalid campaign: {0}")]
    InvalidCampaign(String),

    #[error("segment {id} is degenerate for m={m}, s={s}")]
    DegenerateSegment { id: SegmentId, m: u64, s: u64 },

    #[error("serialization failed: {0}")]
    Serialize(String),
}
