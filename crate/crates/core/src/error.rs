use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("segment has zero x-extent")]
    DegenerateSegment,
    #[error("supporting lines are parallel")]
    ParallelLines,
    #[error("first segment must be strictly steeper than the second")]
    SlopeOrder,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HullError {
    #[error("point is already stored")]
    DuplicatePoint,
    #[error("point is not stored")]
    PointNotFound,
    #[error("value is already stored")]
    DuplicateValue,
    #[error("value is not stored")]
    ValueNotFound,
    #[error("hull is empty")]
    EmptyHull,
    #[error("query direction is zero")]
    ZeroDirection,
    #[error("a side of the bridge computation has no points")]
    EmptySide,
    #[error("edge not found in concatenable queue")]
    EdgeNotFound,
    #[error("no preceding hull edge")]
    NoPredecessor,
    #[error("no succeeding hull edge")]
    NoSuccessor,
    /// Internal state contradicted a predicate outcome. Only reachable with
    /// the inexact kernel; the structure refuses further updates afterwards.
    #[error("hull structure is inconsistent: {0}")]
    Corrupted(&'static str),
}
