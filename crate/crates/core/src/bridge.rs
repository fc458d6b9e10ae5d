//! Bridge finding and chain queries, written once over a cursor abstraction.
//!
//! A convex chain (upper or lower, running from the lexicographically
//! smallest to the largest point) is viewed as a binary tree whose internal
//! nodes are its edges and whose leaves are its vertices. Both the c-queue
//! structure and the bridge tree expose their chains through [`ChainCursor`].

use std::cmp::Ordering;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use crate::embed::Vertex;
use crate::kernel::{intersection_precedes, orient_sign, slope_cmp_lex, HullSide, Point};
use crate::scalar::Scalar;

pub(crate) trait ChainCursor<S: Scalar> {
    fn is_leaf(&self) -> bool;
    /// The vertex of a leaf cursor.
    fn vertex(&self) -> Vertex<S>;
    /// The edge of an internal cursor.
    fn edge(&self) -> (Vertex<S>, Vertex<S>);
    fn go_left(&mut self);
    fn go_right(&mut self);
}

/// Operation counters of one structure.
#[derive(Debug, Default)]
pub struct Counters {
    bridge_iterations: AtomicU64,
    node_visits: AtomicU64,
}

impl Counters {
    pub fn bridge_iterations(&self) -> u64 {
        self.bridge_iterations.load(AtomicOrdering::Relaxed)
    }

    pub fn node_visits(&self) -> u64 {
        self.node_visits.load(AtomicOrdering::Relaxed)
    }

    pub fn reset(&self) {
        self.bridge_iterations.store(0, AtomicOrdering::Relaxed);
        self.node_visits.store(0, AtomicOrdering::Relaxed);
    }

    #[inline]
    pub(crate) fn add_iterations(&self, n: u64) {
        self.bridge_iterations.fetch_add(n, AtomicOrdering::Relaxed);
    }

    #[inline]
    pub(crate) fn add_visits(&self, n: u64) {
        self.node_visits.fetch_add(n, AtomicOrdering::Relaxed);
    }
}

/// Bridge between the chain of `a` (left of `med`) and that of `b` (from
/// `med` on). Returns the maximal bridge: among collinear candidates the
/// leftmost left endpoint and the rightmost right endpoint.
pub(crate) fn find_bridge<S, A, B>(side: HullSide, mut a: A, mut b: B, med: &Point<S>, counters: &Counters) -> (Vertex<S>, Vertex<S>)
where
    S: Scalar,
    A: ChainCursor<S>,
    B: ChainCursor<S>,
{
    let mut iterations = 0;
    loop {
        iterations += 1;
        let (a_leaf, b_leaf) = (a.is_leaf(), b.is_leaf());
        if a_leaf && b_leaf {
            counters.add_iterations(iterations);
            return (a.vertex(), b.vertex());
        }
        let ea = (!a_leaf).then(|| a.edge());
        let eb = (!b_leaf).then(|| b.edge());
        let l = match &ea {
            Some((l, _)) => l.p.clone(),
            None => a.vertex().p,
        };
        let r = match &eb {
            Some((_, r)) => r.p.clone(),
            None => b.vertex().p,
        };
        let mut moved = false;
        if let Some((al, ar)) = &ea {
            // alpha does not climb above the line l-r: the bridge starts at l or before.
            if slope_cmp_lex(side, &al.p, &ar.p, &l, &r) != Ordering::Greater {
                a.go_left();
                moved = true;
            }
        }
        if let Some((bl, br)) = &eb {
            if slope_cmp_lex(side, &l, &r, &bl.p, &br.p) != Ordering::Greater {
                b.go_right();
                moved = true;
            }
        }
        if moved {
            continue;
        }
        match (&ea, &eb) {
            (_, None) => a.go_right(),
            (None, _) => b.go_left(),
            (Some((al, ar)), Some((bl, br))) => {
                if intersection_precedes((&al.p, &ar.p), (&bl.p, &br.p), med) {
                    a.go_right();
                } else {
                    b.go_left();
                }
            }
        }
    }
}

/// Is `q` on the inner side of (or on) the chain, given that `q` lies within
/// the chain's lexicographic range? Single-vertex chains test equality.
pub(crate) fn chain_contains<S: Scalar, C: ChainCursor<S>>(side: HullSide, mut c: C, q: &Point<S>) -> bool {
    loop {
        if c.is_leaf() {
            return c.vertex().p == *q;
        }
        let (u, w) = c.edge();
        if q.lex_cmp(&u.p) == Ordering::Less {
            c.go_left();
        } else if q.lex_cmp(&w.p) == Ordering::Greater {
            c.go_right();
        } else {
            return side.orient(orient_sign(&u.p, &w.p, q)) != Ordering::Greater;
        }
    }
}

/// Vertex of the chain maximizing the dot product with `d`; the chain must
/// be the one facing `d`. Ties go to the earlier vertex.
pub(crate) fn chain_extreme<S: Scalar, C: ChainCursor<S>>(mut c: C, d: &(S, S)) -> Vertex<S> {
    loop {
        if c.is_leaf() {
            return c.vertex();
        }
        let (u, w) = c.edge();
        let dot = w.p.x.sub_ref(&u.p.x).mul_ref(&d.0).add_ref(&w.p.y.sub_ref(&u.p.y).mul_ref(&d.1));
        if dot.sign() == Ordering::Greater {
            c.go_right();
        } else {
            c.go_left();
        }
    }
}

/// A chain given as an explicit vertex list, navigated as an implicit
/// balanced tree.
#[cfg(test)]
#[derive(Clone, Debug)]
pub(crate) struct SliceCursor<'a, S> {
    chain: &'a [Vertex<S>],
    lo: usize,
    hi: usize,
}

#[cfg(test)]
impl<'a, S> SliceCursor<'a, S> {
    pub fn new(chain: &'a [Vertex<S>]) -> Self {
        assert!(!chain.is_empty());
        SliceCursor { chain, lo: 0, hi: chain.len() - 1 }
    }

    fn mid(&self) -> usize {
        (self.lo + self.hi) / 2
    }
}

#[cfg(test)]
impl<S: Scalar> ChainCursor<S> for SliceCursor<'_, S> {
    fn is_leaf(&self) -> bool {
        self.lo == self.hi
    }
    fn vertex(&self) -> Vertex<S> {
        self.chain[self.lo].clone()
    }
    fn edge(&self) -> (Vertex<S>, Vertex<S>) {
        let m = self.mid();
        (self.chain[m].clone(), self.chain[m + 1].clone())
    }
    fn go_left(&mut self) {
        self.hi = self.mid();
    }
    fn go_right(&mut self) {
        self.lo = self.mid() + 1;
    }
}
