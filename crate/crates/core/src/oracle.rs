//! Static reference implementations used as ground truth in tests.

use std::cmp::Ordering;

use crate::kernel::{orient_sign, HullEdge, HullSide, Point};
use crate::scalar::Scalar;

/// Upper and lower hull chains, each from the lexicographically smallest
/// point to the largest, with collinear interior vertices removed.
#[derive(Clone, Debug, PartialEq)]
pub struct HullEdges<S> {
    pub upper: Vec<HullEdge<S>>,
    pub lower: Vec<HullEdge<S>>,
}

impl<S: Scalar> HullEdges<S> {
    pub fn empty() -> Self {
        HullEdges { upper: Vec::new(), lower: Vec::new() }
    }

    pub fn side(&self, side: HullSide) -> &[HullEdge<S>] {
        match side {
            HullSide::Upper => &self.upper,
            HullSide::Lower => &self.lower,
        }
    }

    /// Hull vertices in counter-clockwise order starting at the smallest
    /// point. Empty when there are no edges (zero or one input point).
    pub fn vertices(&self) -> Vec<Point<S>> {
        if self.lower.is_empty() {
            return Vec::new();
        }
        let mut out: Vec<Point<S>> = self.lower.iter().map(|e| e.left.clone()).collect();
        out.push(self.lower.last().unwrap().right.clone());
        // The upper chain shares both endpoints with the lower one.
        for e in self.upper.iter().rev() {
            out.push(e.left.clone());
        }
        out.pop();
        if self.upper == self.lower {
            out.truncate(self.lower.len() + 1);
        }
        out
    }

    /// Number of distinct hull vertices, given the size of the point set.
    pub fn vertex_count(&self, n: usize) -> usize {
        if self.lower.is_empty() {
            n.min(1)
        } else {
            self.vertices().len()
        }
    }
}

fn sorted_unique<S: Scalar>(points: &[Point<S>]) -> Vec<Point<S>> {
    let mut v = points.to_vec();
    v.sort_by(|a, b| a.lex_cmp(b));
    v.dedup();
    v
}

fn chain<S: Scalar>(sorted: &[Point<S>], side: HullSide) -> Vec<HullEdge<S>> {
    let mut stack: Vec<&Point<S>> = Vec::new();
    for p in sorted {
        while stack.len() >= 2
            && side.orient(orient_sign(stack[stack.len() - 2], stack[stack.len() - 1], p)) != Ordering::Less
        {
            stack.pop();
        }
        stack.push(p);
    }
    stack.windows(2).map(|w| HullEdge::new(w[0].clone(), w[1].clone())).collect()
}

/// Monotone-chain construction.
pub fn static_hull<S: Scalar>(points: &[Point<S>]) -> HullEdges<S> {
    let sorted = sorted_unique(points);
    HullEdges { upper: chain(&sorted, HullSide::Upper), lower: chain(&sorted, HullSide::Lower) }
}

/// Upper bridge between two point sets separated in lexicographic order.
pub fn brute_bridge<S: Scalar>(left: &[Point<S>], right: &[Point<S>]) -> HullEdge<S> {
    brute_bridge_side(HullSide::Upper, left, right)
}

/// Tries every pair and keeps the maximal segment whose supporting line has
/// no point strictly outside on `side`. Cubic time.
pub fn brute_bridge_side<S: Scalar>(side: HullSide, left: &[Point<S>], right: &[Point<S>]) -> HullEdge<S> {
    assert!(!left.is_empty() && !right.is_empty(), "both sides need a point");
    let mut best: Option<(&Point<S>, &Point<S>)> = None;
    for a in left {
        for b in right {
            let supporting = left
                .iter()
                .chain(right)
                .all(|q| side.orient(orient_sign(a, b, q)) != Ordering::Greater);
            if !supporting {
                continue;
            }
            best = match best {
                None => Some((a, b)),
                Some((ba, bb)) => {
                    let na = if a.lex_cmp(ba) == Ordering::Less { a } else { ba };
                    let nb = if b.lex_cmp(bb) == Ordering::Greater { b } else { bb };
                    Some((na, nb))
                }
            };
        }
    }
    let (a, b) = best.expect("separated sets always have a bridge");
    HullEdge::new(a.clone(), b.clone())
}

/// Membership by testing `q` against every edge of the hull polygon.
pub fn naive_point_in_hull<S: Scalar>(points: &[Point<S>], q: &Point<S>) -> bool {
    NaiveMembership::new(points).contains(q)
}

/// [`naive_point_in_hull`] with the hull computed once for many queries.
#[derive(Clone, Debug)]
pub struct NaiveMembership<S> {
    sorted: Vec<Point<S>>,
    hull: HullEdges<S>,
}

impl<S: Scalar> NaiveMembership<S> {
    pub fn new(points: &[Point<S>]) -> Self {
        let sorted = sorted_unique(points);
        let hull = HullEdges { upper: chain(&sorted, HullSide::Upper), lower: chain(&sorted, HullSide::Lower) };
        NaiveMembership { sorted, hull }
    }

    pub fn contains(&self, q: &Point<S>) -> bool {
        let (Some(first), Some(last)) = (self.sorted.first(), self.sorted.last()) else {
            return false;
        };
        if q.lex_cmp(first) == Ordering::Less || q.lex_cmp(last) == Ordering::Greater {
            return false;
        }
        if self.sorted.len() == 1 {
            return first == q;
        }
        // Counter-clockwise: lower chain forward, upper chain backward.
        let forward = self.hull.lower.iter().map(|e| (&e.left, &e.right));
        let backward = self.hull.upper.iter().map(|e| (&e.right, &e.left));
        forward.chain(backward).all(|(u, w)| orient_sign(u, w, q) != Ordering::Less)
    }
}
