//! How stored keys become plane points.
//!
//! The planar structures store points directly. The rank structures store
//! values and place the `i`-th smallest at `(i, value)`; since one update
//! shifts every rank to its right, they keep bridges and chain edges in a
//! rank-relative form. The hull engines are written once against
//! [`Embedding`] and instantiated with [`Planar`] or [`Ranked`].

use std::cmp::Ordering;
use std::fmt::Debug;
use std::marker::PhantomData;

use crate::kernel::{HullEdge, Point};
use crate::scalar::Scalar;

/// A chain vertex together with its rank inside the subtree being processed.
/// The rank is meaningful only for ranked embeddings and is 0 otherwise.
#[derive(Clone, Debug, PartialEq)]
pub struct Vertex<S> {
    pub p: Point<S>,
    pub rank: usize,
}

/// Left and right endpoint of a bridge.
pub type VertexPair<S> = (Vertex<S>, Vertex<S>);

pub trait Embedding: Sized + 'static {
    type S: Scalar;
    type Key: Clone + Debug + PartialEq;
    type Bridge: Clone + Debug + PartialEq;
    type Link: Clone + Debug;

    fn key_cmp(a: &Self::Key, b: &Self::Key) -> Ordering;
    fn vertex(key: &Self::Key, rank: usize) -> Vertex<Self::S>;
    fn key_of(v: &Vertex<Self::S>) -> Self::Key;
    /// Chain order of two vertices of one subtree.
    fn vertex_cmp(a: &Vertex<Self::S>, b: &Vertex<Self::S>) -> Ordering;
    /// Does `v` come before the vertex of `key` placed at `rank`?
    fn vertex_before(v: &Vertex<Self::S>, key: &Self::Key, rank: usize) -> bool;

    fn encode_bridge(a: &Vertex<Self::S>, b: &Vertex<Self::S>, med_rank: usize) -> Self::Bridge;
    fn decode_bridge(br: &Self::Bridge, med_rank: usize) -> (Vertex<Self::S>, Vertex<Self::S>);

    /// Edge form kept in c-queues, with its rank extent as weight.
    fn encode_link(a: &Vertex<Self::S>, b: &Vertex<Self::S>) -> (Self::Link, u64);
    fn decode_link(l: &Self::Link, left_rank: usize) -> (Vertex<Self::S>, Vertex<Self::S>);
    /// Does the link starting at `left_rank` begin strictly before `v`?
    fn link_precedes(l: &Self::Link, left_rank: usize, v: &Vertex<Self::S>) -> bool;
}

/// Points stored as themselves.
#[derive(Debug)]
pub struct Planar<S>(PhantomData<S>);

impl<S: Scalar> Embedding for Planar<S> {
    type S = S;
    type Key = Point<S>;
    type Bridge = HullEdge<S>;
    type Link = HullEdge<S>;

    #[inline]
    fn key_cmp(a: &Point<S>, b: &Point<S>) -> Ordering {
        a.lex_cmp(b)
    }

    #[inline]
    fn vertex(key: &Point<S>, _rank: usize) -> Vertex<S> {
        Vertex { p: key.clone(), rank: 0 }
    }

    fn key_of(v: &Vertex<S>) -> Point<S> {
        v.p.clone()
    }

    #[inline]
    fn vertex_cmp(a: &Vertex<S>, b: &Vertex<S>) -> Ordering {
        a.p.lex_cmp(&b.p)
    }

    #[inline]
    fn vertex_before(v: &Vertex<S>, key: &Point<S>, _rank: usize) -> bool {
        v.p.lex_cmp(key) == Ordering::Less
    }

    fn encode_bridge(a: &Vertex<S>, b: &Vertex<S>, _med_rank: usize) -> HullEdge<S> {
        HullEdge::new(a.p.clone(), b.p.clone())
    }

    fn decode_bridge(br: &HullEdge<S>, _med_rank: usize) -> (Vertex<S>, Vertex<S>) {
        (Vertex { p: br.left.clone(), rank: 0 }, Vertex { p: br.right.clone(), rank: 0 })
    }

    fn encode_link(a: &Vertex<S>, b: &Vertex<S>) -> (HullEdge<S>, u64) {
        (HullEdge::new(a.p.clone(), b.p.clone()), 0)
    }

    fn decode_link(l: &HullEdge<S>, _left_rank: usize) -> (Vertex<S>, Vertex<S>) {
        (Vertex { p: l.left.clone(), rank: 0 }, Vertex { p: l.right.clone(), rank: 0 })
    }

    #[inline]
    fn link_precedes(l: &HullEdge<S>, _left_rank: usize, v: &Vertex<S>) -> bool {
        l.left.lex_cmp(&v.p) == Ordering::Less
    }
}

/// A bridge between values `y1 < y2`, stored by its rank distances to the
/// median of the node: `y1` sits `w1` ranks left of it, `y2` sits `w2` ranks
/// right of it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ImplicitBridge<S> {
    pub y1: S,
    pub y2: S,
    pub w1: usize,
    pub w2: usize,
}

impl<S: Scalar> ImplicitBridge<S> {
    /// Sum of both widths: the rank extent of the bridge.
    pub fn width(&self) -> usize {
        self.w1 + self.w2
    }
}

/// Explicit bridge given the current rank `r` of the median.
pub fn materialize_bridge<S: Scalar>(ib: &ImplicitBridge<S>, r: usize) -> HullEdge<S> {
    HullEdge::new(
        Point::new(S::from_usize(r - ib.w1), ib.y1.clone()),
        Point::new(S::from_usize(r + ib.w2), ib.y2.clone()),
    )
}

/// Inverse of [`materialize_bridge`]. The edge's x-coordinates must be ranks
/// with `left.x <= r <= right.x`.
pub fn implicitize_bridge<S: Scalar>(e: &HullEdge<S>, r: usize) -> ImplicitBridge<S> {
    let rank = |x: &S| x.to_f64() as usize;
    ImplicitBridge { y1: e.left.y.clone(), y2: e.right.y.clone(), w1: r - rank(&e.left.x), w2: rank(&e.right.x) - r }
}

/// Which child of a node a rank computation steps into.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChildSide {
    Left,
    Right,
}

/// Median rank of a child of `v` from the median rank `r` of `v`.
///
/// `other_size` is the size of the child's subtree on the far side of
/// `v`'s median: the right subtree of a left child, or the left subtree of a
/// right child.
pub fn median_rank_child(r: usize, which: ChildSide, other_size: usize) -> usize {
    match which {
        ChildSide::Left => r - other_size,
        ChildSide::Right => r + other_size,
    }
}

/// Chain edge of a rank hull: end values plus rank extent.
#[derive(Clone, Debug, PartialEq)]
pub struct RankLink<S> {
    pub y1: S,
    pub y2: S,
    pub extent: usize,
}

/// Values placed at `(rank, value)`.
#[derive(Debug)]
pub struct Ranked<S>(PhantomData<S>);

impl<S: Scalar> Embedding for Ranked<S> {
    type S = S;
    type Key = S;
    type Bridge = ImplicitBridge<S>;
    type Link = RankLink<S>;

    #[inline]
    fn key_cmp(a: &S, b: &S) -> Ordering {
        a.total_cmp(b)
    }

    #[inline]
    fn vertex(key: &S, rank: usize) -> Vertex<S> {
        Vertex { p: Point::new(S::from_usize(rank), key.clone()), rank }
    }

    fn key_of(v: &Vertex<S>) -> S {
        v.p.y.clone()
    }

    #[inline]
    fn vertex_cmp(a: &Vertex<S>, b: &Vertex<S>) -> Ordering {
        a.rank.cmp(&b.rank)
    }

    #[inline]
    fn vertex_before(v: &Vertex<S>, _key: &S, rank: usize) -> bool {
        v.rank < rank
    }

    fn encode_bridge(a: &Vertex<S>, b: &Vertex<S>, med_rank: usize) -> ImplicitBridge<S> {
        ImplicitBridge { y1: a.p.y.clone(), y2: b.p.y.clone(), w1: med_rank - a.rank, w2: b.rank - med_rank }
    }

    fn decode_bridge(br: &ImplicitBridge<S>, med_rank: usize) -> (Vertex<S>, Vertex<S>) {
        (Self::vertex(&br.y1, med_rank - br.w1), Self::vertex(&br.y2, med_rank + br.w2))
    }

    fn encode_link(a: &Vertex<S>, b: &Vertex<S>) -> (RankLink<S>, u64) {
        let extent = b.rank - a.rank;
        (RankLink { y1: a.p.y.clone(), y2: b.p.y.clone(), extent }, extent as u64)
    }

    fn decode_link(l: &RankLink<S>, left_rank: usize) -> (Vertex<S>, Vertex<S>) {
        (Self::vertex(&l.y1, left_rank), Self::vertex(&l.y2, left_rank + l.extent))
    }

    #[inline]
    fn link_precedes(_l: &RankLink<S>, left_rank: usize, v: &Vertex<S>) -> bool {
        left_rank < v.rank
    }
}
