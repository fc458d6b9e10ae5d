//! Dynamic planar convex hulls.
//!
//! Two fully dynamic structures keep the hull of a point set under
//! insertions and deletions in `O(log² n)` worst-case time per update:
//! [`OvlHull`] stores the hull pieces of every subtree in concatenable
//! queues, while [`EilHull`] stores nothing but bridges and navigates
//! hull chains through the tree itself. [`RankHull`] applies either scheme to
//! a set of values placed at `(rank, value)`.
//!
//! Everything is generic over [`Scalar`]. [`Rational`] gives exact
//! predicates; `f64` and `f32` are fast and may go wrong on near-degenerate
//! input.

pub mod bridge;
pub mod cqueue;
pub mod datagen;
pub mod eilice;
pub mod embed;
pub mod error;
pub mod kernel;
pub mod oracle;
pub mod ovl;
pub mod rank;
pub mod scalar;

pub use bridge::Counters;
pub use eilice::{EdgeCursor, EilHull, NavMode};
pub use error::{HullError, KernelError};
pub use kernel::{HullEdge, HullSide, Orientation, Point, SeparatorSide};
pub use oracle::HullEdges;
pub use ovl::OvlHull;
pub use rank::{RankHull, RankVariant};
pub use scalar::{KernelKind, Rational, Scalar};

pub type ExactOvlHull = OvlHull<Rational>;
pub type FloatOvlHull = OvlHull<f64>;
pub type ExactEilHull = EilHull<Rational>;
pub type FloatEilHull = EilHull<f64>;
pub type ExactRankHull = RankHull<Rational>;
