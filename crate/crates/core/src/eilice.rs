//! Partial bridge tree: a leaf-based AVL tree whose internal nodes store only
//! their upper and lower bridges. Chains are never materialized; instead the
//! chain of any subtree is navigated as a binary tree of bridges.
//!
//! A navigation state is a window `[lo, hi]` of consecutive chain vertices of
//! some subtree. Its root edge is the bridge of the lowest node separating
//! `lo` from `hi`; its children are the windows `[lo, a]` and `[b, hi]` for
//! that bridge `(a, b)`. Locating the separating node for a child window
//! starts at the corresponding child of the current node, so a descent
//! along one chain visits each tree node at most once.

use std::cell::Cell;
use std::cmp::Ordering;

use crate::bridge::{chain_contains, chain_extreme, find_bridge, ChainCursor, Counters};
use crate::embed::{Embedding, Planar, Vertex, VertexPair};
use crate::error::HullError;
use crate::kernel::{HullEdge, HullSide, Point};
use crate::oracle::{brute_bridge_side, static_hull, HullEdges};
use crate::scalar::Scalar;

const NIL: u32 = u32::MAX;

/// How chain navigation locates the node of the next window.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum NavMode {
    /// Resume below the current node.
    #[default]
    Telescoping,
    /// Search again from the top of the chain's subtree on every step.
    Restart,
    /// As `Telescoping`, but ranks are recomputed by a search from the top of the
    /// subtree instead of being carried along.
    SearchRanks,
}

#[derive(Clone, Debug)]
struct Node<E: Embedding> {
    left: u32,
    right: u32,
    height: i32,
    size: usize,
    lo: E::Key,
    hi: E::Key,
    bridge: [Option<E::Bridge>; 2],
}

#[derive(Debug)]
pub(crate) struct PbtTree<E: Embedding> {
    nodes: Vec<Node<E>>,
    free: Vec<u32>,
    root: u32,
    mode: NavMode,
    /// Set when navigation met a bridge contradicting its window; only
    /// reachable with the inexact kernel.
    fault: Cell<Option<&'static str>>,
    poisoned: bool,
    pub counters: Counters,
}

/// Navigation window over the chain of subtree `top`.
#[derive(Clone, Debug)]
pub(crate) struct Window<S> {
    top: u32,
    top_base: usize,
    node: u32,
    base: usize,
    lo: Vertex<S>,
    hi: Vertex<S>,
}

impl<S> Window<S> {
    fn is_leaf(&self) -> bool {
        self.node == NIL
    }
}

pub(crate) struct PbtCursor<'a, E: Embedding> {
    tree: &'a PbtTree<E>,
    side: HullSide,
    w: Window<E::S>,
}

impl<E: Embedding> ChainCursor<E::S> for PbtCursor<'_, E> {
    fn is_leaf(&self) -> bool {
        self.w.is_leaf()
    }

    fn vertex(&self) -> Vertex<E::S> {
        self.w.lo.clone()
    }

    fn edge(&self) -> (Vertex<E::S>, Vertex<E::S>) {
        self.tree.window_edge(self.side, &self.w)
    }

    fn go_left(&mut self) {
        self.w = self.tree.left_window(self.side, &self.w);
    }

    fn go_right(&mut self) {
        self.w = self.tree.right_window(self.side, &self.w);
    }
}

impl<E: Embedding> PbtTree<E> {
    pub fn new(mode: NavMode) -> Self {
        PbtTree {
            nodes: Vec::new(),
            free: Vec::new(),
            root: NIL,
            mode,
            fault: Cell::new(None),
            poisoned: false,
            counters: Counters::default(),
        }
    }

    pub fn len(&self) -> usize {
        if self.root == NIL {
            0
        } else {
            self.node(self.root).size
        }
    }

    #[inline]
    fn node(&self, id: u32) -> &Node<E> {
        &self.nodes[id as usize]
    }

    #[inline]
    fn is_leaf(&self, id: u32) -> bool {
        self.node(id).left == NIL
    }

    fn alloc(&mut self, key: E::Key) -> u32 {
        let node = Node { left: NIL, right: NIL, height: 1, size: 1, lo: key.clone(), hi: key, bridge: [None, None] };
        if let Some(id) = self.free.pop() {
            self.nodes[id as usize] = node;
            id
        } else {
            self.nodes.push(node);
            (self.nodes.len() - 1) as u32
        }
    }

    pub fn contains(&self, key: &E::Key) -> bool {
        let mut v = self.root;
        if v == NIL {
            return false;
        }
        while !self.is_leaf(v) {
            let n = self.node(v);
            v = if E::key_cmp(key, &self.node(n.right).lo) == Ordering::Less { n.left } else { n.right };
        }
        E::key_cmp(key, &self.node(v).lo) == Ordering::Equal
    }

    // Navigation.

    /// Whole chain of subtree `top`, whose first vertex has rank `base`.
    fn top_window(&self, top: u32, base: usize) -> Window<E::S> {
        let n = self.node(top);
        let lo = E::vertex(&n.lo, base);
        if self.is_leaf(top) {
            return Window { top, top_base: base, node: NIL, base, hi: lo.clone(), lo };
        }
        let hi = E::vertex(&n.hi, base + n.size - 1);
        Window { top, top_base: base, node: top, base, lo, hi }
    }

    fn cursor(&self, side: HullSide, top: u32, base: usize) -> PbtCursor<'_, E> {
        PbtCursor { tree: self, side, w: self.top_window(top, base) }
    }

    fn window_edge(&self, side: HullSide, w: &Window<E::S>) -> (Vertex<E::S>, Vertex<E::S>) {
        let n = self.node(w.node);
        let med_rank = w.base + self.node(n.left).size;
        E::decode_bridge(n.bridge[side.index()].as_ref().expect("internal node without bridge"), med_rank)
    }

    /// Lowest node at or below `v` (leftmost leaf at rank `base`) that
    /// separates `lo` from `hi`.
    fn separating_node(&self, mut v: u32, mut base: usize, lo: &Vertex<E::S>, hi: &Vertex<E::S>) -> Option<(u32, usize)> {
        let mut visits = 0;
        loop {
            visits += 1;
            let n = self.node(v);
            if n.left == NIL {
                self.counters.add_visits(visits);
                self.fault.set(Some("window endpoints fall into one leaf"));
                return None;
            }
            let med_rank = base + self.node(n.left).size;
            let med_key = &self.node(n.right).lo;
            if !E::vertex_before(lo, med_key, med_rank) {
                base = med_rank;
                v = n.right;
            } else if E::vertex_before(hi, med_key, med_rank) {
                v = n.left;
            } else {
                break;
            }
        }
        self.counters.add_visits(visits);
        Some((v, base))
    }

    /// Rank of the leftmost leaf of `target` within subtree `top`, by search.
    fn search_base(&self, top: u32, top_base: usize, target: u32) -> usize {
        let key = &self.node(target).lo;
        let (mut v, mut base) = (top, top_base);
        let mut visits = 0;
        while v != target {
            visits += 1;
            let n = self.node(v);
            if E::key_cmp(key, &self.node(n.right).lo) == Ordering::Less {
                v = n.left;
            } else {
                base += self.node(n.left).size;
                v = n.right;
            }
        }
        self.counters.add_visits(visits);
        base
    }

    fn child_window(&self, w: &Window<E::S>, lo: Vertex<E::S>, hi: Vertex<E::S>, left: bool) -> Window<E::S> {
        if E::vertex_cmp(&lo, &hi) == Ordering::Equal {
            return Window { node: NIL, base: 0, lo, hi, ..*w };
        }
        let n = self.node(w.node);
        let (start, start_base) = match self.mode {
            NavMode::Restart => (w.top, w.top_base),
            _ if left => (n.left, w.base),
            _ => (n.right, w.base + self.node(n.left).size),
        };
        let Some((node, mut base)) = self.separating_node(start, start_base, &lo, &hi) else {
            return Window { node: NIL, base: 0, hi: lo.clone(), lo, ..*w };
        };
        if self.mode == NavMode::SearchRanks {
            base = self.search_base(w.top, w.top_base, node);
        }
        Window { node, base, lo, hi, ..*w }
    }

    fn left_window(&self, side: HullSide, w: &Window<E::S>) -> Window<E::S> {
        let (a, _) = self.window_edge(side, w);
        self.child_window(w, w.lo.clone(), a, true)
    }

    fn right_window(&self, side: HullSide, w: &Window<E::S>) -> Window<E::S> {
        let (_, b) = self.window_edge(side, w);
        self.child_window(w, b, w.hi.clone(), false)
    }

    // Updates.

    fn pull(&mut self, v: u32) {
        let (l, r) = (self.node(v).left, self.node(v).right);
        let (nl, nr) = (self.node(l), self.node(r));
        let height = 1 + nl.height.max(nr.height);
        let size = nl.size + nr.size;
        let (lo, hi) = (nl.lo.clone(), nr.hi.clone());
        let med_rank = nl.size;
        let med = E::vertex(&nr.lo, med_rank).p;
        let mut bridges = [None, None];
        for side in HullSide::BOTH {
            let (a, b) =
                find_bridge(side, self.cursor(side, l, 0), self.cursor(side, r, med_rank), &med, &self.counters);
            if !E::vertex_before(&a, &nr.lo, med_rank) || E::vertex_before(&b, &nr.lo, med_rank) {
                self.fault.set(Some("bridge does not straddle the median"));
                return;
            }
            bridges[side.index()] = Some(E::encode_bridge(&a, &b, med_rank));
        }
        let n = &mut self.nodes[v as usize];
        n.height = height;
        n.size = size;
        n.lo = lo;
        n.hi = hi;
        n.bridge = bridges;
    }

    fn height(&self, v: u32) -> i32 {
        self.node(v).height
    }

    fn rotate_right(&mut self, v: u32) -> u32 {
        let l = self.node(v).left;
        self.nodes[v as usize].left = self.node(l).right;
        self.nodes[l as usize].right = v;
        self.pull(v);
        self.pull(l);
        l
    }

    fn rotate_left(&mut self, v: u32) -> u32 {
        let r = self.node(v).right;
        self.nodes[v as usize].right = self.node(r).left;
        self.nodes[r as usize].left = v;
        self.pull(v);
        self.pull(r);
        r
    }

    fn rebalance(&mut self, v: u32) -> u32 {
        let (l, r) = (self.node(v).left, self.node(v).right);
        if self.height(l) > self.height(r) + 1 {
            if self.height(self.node(l).left) < self.height(self.node(l).right) {
                self.nodes[v as usize].left = self.rotate_left(l);
            }
            self.rotate_right(v)
        } else if self.height(r) > self.height(l) + 1 {
            if self.height(self.node(r).right) < self.height(self.node(r).left) {
                self.nodes[v as usize].right = self.rotate_right(r);
            }
            self.rotate_left(v)
        } else {
            self.pull(v);
            v
        }
    }

    fn insert_rec(&mut self, v: u32, key: &E::Key) -> u32 {
        if self.is_leaf(v) {
            let w = self.alloc(key.clone());
            let u = self.alloc(key.clone());
            let (a, b) = if E::key_cmp(key, &self.node(v).lo) == Ordering::Less { (w, v) } else { (v, w) };
            self.nodes[u as usize].left = a;
            self.nodes[u as usize].right = b;
            self.pull(u);
            return u;
        }
        let (l, r) = (self.node(v).left, self.node(v).right);
        if E::key_cmp(key, &self.node(r).lo) == Ordering::Less {
            self.nodes[v as usize].left = self.insert_rec(l, key);
        } else {
            self.nodes[v as usize].right = self.insert_rec(r, key);
        }
        self.rebalance(v)
    }

    fn delete_rec(&mut self, v: u32, key: &E::Key) -> u32 {
        if self.is_leaf(v) {
            self.free.push(v);
            return NIL;
        }
        let (l, r) = (self.node(v).left, self.node(v).right);
        if E::key_cmp(key, &self.node(r).lo) == Ordering::Less {
            let l = self.delete_rec(l, key);
            if l == NIL {
                self.free.push(v);
                return r;
            }
            self.nodes[v as usize].left = l;
        } else {
            let r = self.delete_rec(r, key);
            if r == NIL {
                self.free.push(v);
                return l;
            }
            self.nodes[v as usize].right = r;
        }
        self.rebalance(v)
    }

    fn check_poisoned(&self) -> Result<(), HullError> {
        if self.poisoned {
            return Err(HullError::Corrupted("structure refused update after earlier failure"));
        }
        Ok(())
    }

    fn take_fault(&mut self) -> Result<(), HullError> {
        match self.fault.take() {
            Some(msg) => {
                self.poisoned = true;
                Err(HullError::Corrupted(msg))
            }
            None => Ok(()),
        }
    }

    pub fn insert(&mut self, key: E::Key) -> Result<(), HullError> {
        self.check_poisoned()?;
        if self.contains(&key) {
            return Err(HullError::DuplicatePoint);
        }
        self.root = if self.root == NIL { self.alloc(key) } else { self.insert_rec(self.root, &key) };
        self.take_fault()
    }

    pub fn delete(&mut self, key: &E::Key) -> Result<(), HullError> {
        self.check_poisoned()?;
        if !self.contains(key) {
            return Err(HullError::PointNotFound);
        }
        self.root = self.delete_rec(self.root, key);
        self.take_fault()
    }

    pub fn keys(&self) -> Vec<E::Key> {
        let mut out = Vec::with_capacity(self.len());
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            if v == NIL {
                continue;
            }
            if self.is_leaf(v) {
                out.push(self.node(v).lo.clone());
            } else {
                stack.push(self.node(v).right);
                stack.push(self.node(v).left);
            }
        }
        out
    }

    // Queries.

    pub fn root_window(&self) -> Option<Window<E::S>> {
        (self.root != NIL).then(|| self.top_window(self.root, 0))
    }

    pub fn window_edge_public(&self, side: HullSide, w: &Window<E::S>) -> Option<VertexPair<E::S>> {
        (!w.is_leaf()).then(|| self.window_edge(side, w))
    }

    pub fn step(&self, side: HullSide, w: &Window<E::S>, left: bool) -> Option<Window<E::S>> {
        if w.is_leaf() {
            return None;
        }
        Some(if left { self.left_window(side, w) } else { self.right_window(side, w) })
    }

    fn report_side(&self, side: HullSide, w: Window<E::S>, out: &mut Vec<HullEdge<E::S>>) {
        if w.is_leaf() {
            return;
        }
        let (a, b) = self.window_edge(side, &w);
        let left = self.left_window(side, &w);
        let right = self.right_window(side, &w);
        self.report_side(side, left, out);
        out.push(HullEdge::new(a.p, b.p));
        self.report_side(side, right, out);
    }

    pub fn report_hull(&self) -> HullEdges<E::S> {
        let mut hull = HullEdges::empty();
        if let Some(w) = self.root_window() {
            self.report_side(HullSide::Upper, w.clone(), &mut hull.upper);
            self.report_side(HullSide::Lower, w, &mut hull.lower);
        }
        hull
    }

    pub fn bridge_with(&self, right: &Self, side: HullSide) -> Result<VertexPair<E::S>, HullError> {
        if self.root == NIL || right.root == NIL {
            return Err(HullError::EmptySide);
        }
        let base = self.len();
        let med = E::vertex(&right.node(right.root).lo, base).p;
        Ok(find_bridge(
            side,
            self.cursor(side, self.root, 0),
            right.cursor(side, right.root, base),
            &med,
            &self.counters,
        ))
    }

    pub fn point_in_hull(&self, q: &Point<E::S>) -> bool {
        let Some(w) = self.root_window() else {
            return false;
        };
        if q.lex_cmp(&w.lo.p) == Ordering::Less || q.lex_cmp(&w.hi.p) == Ordering::Greater {
            return false;
        }
        HullSide::BOTH.iter().all(|&side| chain_contains(side, self.cursor(side, self.root, 0), q))
    }

    pub fn extreme_point(&self, dir: &(E::S, E::S)) -> Result<Point<E::S>, HullError> {
        if self.root == NIL {
            return Err(HullError::EmptyHull);
        }
        if dir.0.sign() == Ordering::Equal && dir.1.sign() == Ordering::Equal {
            return Err(HullError::ZeroDirection);
        }
        let side = if dir.1.sign() == Ordering::Greater { HullSide::Upper } else { HullSide::Lower };
        Ok(chain_extreme(self.cursor(side, self.root, 0), dir).p)
    }

    /// Visits every internal node with its subtree's base rank.
    fn for_each_internal(&self, mut f: impl FnMut(u32, usize) -> Result<(), String>) -> Result<(), String> {
        let mut stack = vec![(self.root, 0usize)];
        while let Some((v, base)) = stack.pop() {
            if v == NIL || self.is_leaf(v) {
                continue;
            }
            f(v, base)?;
            let n = self.node(v);
            stack.push((n.left, base));
            stack.push((n.right, base + self.node(n.left).size));
        }
        Ok(())
    }

    /// Shape, bookkeeping, the median property of every bridge, and the
    /// reported hull. With `deep`, every bridge is compared against the
    /// brute-force bridge of its children.
    pub fn audit(&self, deep: bool) -> Result<(), String> {
        let keys = self.keys();
        self.for_each_internal(|v, base| {
            let n = self.node(v);
            let (l, r) = (self.node(n.left), self.node(n.right));
            if (l.height - r.height).abs() > 1 {
                return Err("tree is unbalanced".into());
            }
            if n.height != 1 + l.height.max(r.height) || n.size != l.size + r.size {
                return Err("stale height or size".into());
            }
            if n.lo != l.lo || n.hi != r.hi || E::key_cmp(&l.hi, &r.lo) != Ordering::Less {
                return Err("stale or misordered key range".into());
            }
            let med_rank = base + l.size;
            for side in HullSide::BOTH {
                let (a, b) = E::decode_bridge(n.bridge[side.index()].as_ref().ok_or("missing bridge")?, med_rank);
                // The bridge starts left of the median and ends at it or after.
                if !E::vertex_before(&a, &r.lo, med_rank) || E::vertex_before(&b, &r.lo, med_rank) {
                    return Err("bridge does not straddle the median".into());
                }
                if deep {
                    let pts = |range: std::ops::Range<usize>| -> Vec<Point<E::S>> {
                        range.map(|i| E::vertex(&keys[i], i).p).collect()
                    };
                    let want = brute_bridge_side(side, &pts(base..med_rank), &pts(med_rank..base + n.size));
                    if a.p != want.left || b.p != want.right {
                        return Err(format!("bridge {}-{} differs from brute force {}", a.p, b.p, want));
                    }
                }
            }
            Ok(())
        })?;
        let points: Vec<Point<E::S>> = keys.iter().enumerate().map(|(i, k)| E::vertex(k, i).p).collect();
        if self.report_hull() != static_hull(&points) {
            return Err("reported hull differs from the static hull".into());
        }
        Ok(())
    }

    /// Every internal node as (first rank, median rank, size, stored
    /// bridges), in preorder.
    pub fn node_bridges(&self) -> Vec<(usize, usize, usize, [E::Bridge; 2])> {
        let mut out = Vec::new();
        let mut stack = vec![(self.root, 0usize)];
        while let Some((v, base)) = stack.pop() {
            if v == NIL || self.is_leaf(v) {
                continue;
            }
            let n = self.node(v);
            let [u, l] = n.bridge.clone();
            let med_rank = base + self.node(n.left).size;
            out.push((base, med_rank, n.size, [u.expect("missing bridge"), l.expect("missing bridge")]));
            stack.push((n.right, base + self.node(n.left).size));
            stack.push((n.left, base));
        }
        out
    }

    pub fn height_of_root(&self) -> i32 {
        if self.root == NIL {
            0
        } else {
            self.height(self.root)
        }
    }
}

/// Position on a chain of an [`EilHull`]: an edge together with the window
/// of chain vertices it roots.
#[derive(Clone, Debug)]
pub struct EdgeCursor<S: Scalar> {
    side: HullSide,
    window: Window<S>,
    edge: HullEdge<S>,
}

impl<S: Scalar> EdgeCursor<S> {
    pub fn edge(&self) -> &HullEdge<S> {
        &self.edge
    }

    pub fn side(&self) -> HullSide {
        self.side
    }
}

/// Dynamic convex hull of a planar point set, kept as a partial bridge tree
/// without concatenable queues.
#[derive(Debug)]
pub struct EilHull<S: Scalar> {
    tree: PbtTree<Planar<S>>,
}

impl<S: Scalar> Default for EilHull<S> {
    fn default() -> Self {
        Self::new()
    }
}

impl<S: Scalar> EilHull<S> {
    pub fn new() -> Self {
        Self::with_mode(NavMode::Telescoping)
    }

    pub fn with_mode(mode: NavMode) -> Self {
        EilHull { tree: PbtTree::new(mode) }
    }

    pub fn from_points<I: IntoIterator<Item = Point<S>>>(points: I) -> Result<Self, HullError> {
        let mut h = Self::new();
        for p in points {
            h.insert(p)?;
        }
        Ok(h)
    }

    pub fn len(&self) -> usize {
        self.tree.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn height(&self) -> i32 {
        self.tree.height_of_root()
    }

    pub fn insert(&mut self, p: Point<S>) -> Result<(), HullError> {
        self.tree.insert(p)
    }

    pub fn delete(&mut self, p: &Point<S>) -> Result<(), HullError> {
        self.tree.delete(p)
    }

    pub fn contains(&self, p: &Point<S>) -> bool {
        self.tree.contains(p)
    }

    pub fn points(&self) -> Vec<Point<S>> {
        self.tree.keys()
    }

    pub fn report_hull(&self) -> HullEdges<S> {
        self.tree.report_hull()
    }

    pub fn point_in_hull(&self, q: &Point<S>) -> bool {
        self.tree.point_in_hull(q)
    }

    pub fn extreme_point(&self, dir: (S, S)) -> Result<Point<S>, HullError> {
        self.tree.extreme_point(&dir)
    }

    pub fn bridge_with(&self, right: &Self, side: HullSide) -> Result<HullEdge<S>, HullError> {
        let (a, b) = self.tree.bridge_with(&right.tree, side)?;
        Ok(HullEdge::new(a.p, b.p))
    }

    fn edge_cursor(&self, side: HullSide, window: Window<S>) -> Option<EdgeCursor<S>> {
        let (a, b) = self.tree.window_edge_public(side, &window)?;
        Some(EdgeCursor { side, window, edge: HullEdge::new(a.p, b.p) })
    }

    /// The root edge of the whole chain on `side`; `None` with fewer than two
    /// points.
    pub fn root_cursor(&self, side: HullSide) -> Option<EdgeCursor<S>> {
        self.edge_cursor(side, self.tree.root_window()?)
    }

    /// Root edge of the part of the chain left of the cursor's edge.
    pub fn left_child_on_hull(&self, c: &EdgeCursor<S>) -> Result<EdgeCursor<S>, HullError> {
        let w = self.tree.step(c.side, &c.window, true).ok_or(HullError::NoPredecessor)?;
        self.edge_cursor(c.side, w).ok_or(HullError::NoPredecessor)
    }

    /// Root edge of the part of the chain right of the cursor's edge.
    pub fn right_child_on_hull(&self, c: &EdgeCursor<S>) -> Result<EdgeCursor<S>, HullError> {
        let w = self.tree.step(c.side, &c.window, false).ok_or(HullError::NoSuccessor)?;
        self.edge_cursor(c.side, w).ok_or(HullError::NoSuccessor)
    }

    pub fn counters(&self) -> &Counters {
        &self.tree.counters
    }

    pub fn audit(&self, deep: bool) -> Result<(), String> {
        self.tree.audit(deep)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type P = Point<Rational>;

    fn p(x: f64, y: f64) -> P {
        Point::from_f64(x, y)
    }

    fn e(a: P, b: P) -> HullEdge<Rational> {
        HullEdge::new(a, b)
    }

    #[test]
    fn running_example() {
        for mode in [NavMode::Telescoping, NavMode::Restart, NavMode::SearchRanks] {
            let mut h = EilHull::with_mode(mode);
            for q in [p(2.0, 2.0), p(0.0, 0.0), p(3.0, 0.0), p(1.0, 2.0)] {
                h.insert(q).unwrap();
            }
            let hull = h.report_hull();
            assert_eq!(hull.upper.len(), 3);
            assert_eq!(hull.lower, vec![e(p(0.0, 0.0), p(3.0, 0.0))]);
            h.audit(true).unwrap();
            h.delete(&p(1.0, 2.0)).unwrap();
            assert_eq!(h.report_hull().upper, vec![e(p(0.0, 0.0), p(2.0, 2.0)), e(p(2.0, 2.0), p(3.0, 0.0))]);
        }
    }

    #[test]
    fn cursor_walks_left() {
        let h = EilHull::from_points([p(0.0, 0.0), p(1.0, 2.0), p(2.0, 3.0), p(3.0, 3.2)]).unwrap();
        let root = h.root_cursor(HullSide::Upper).unwrap();
        assert_eq!(root.edge(), &e(p(1.0, 2.0), p(2.0, 3.0)));
        let left = h.left_child_on_hull(&root).unwrap();
        assert_eq!(left.edge(), &e(p(0.0, 0.0), p(1.0, 2.0)));
        assert_eq!(h.left_child_on_hull(&left).unwrap_err(), HullError::NoPredecessor);
        let right = h.right_child_on_hull(&root).unwrap();
        assert_eq!(right.edge(), &e(p(2.0, 3.0), p(3.0, 3.2)));
        assert_eq!(h.right_child_on_hull(&right).unwrap_err(), HullError::NoSuccessor);
    }

    #[test]
    fn errors_and_tiny_sets() {
        let mut h = EilHull::<Rational>::new();
        assert_eq!(h.delete(&p(0.0, 0.0)), Err(HullError::PointNotFound));
        assert!(h.root_cursor(HullSide::Upper).is_none());
        h.insert(p(1.0, 1.0)).unwrap();
        assert_eq!(h.insert(p(1.0, 1.0)), Err(HullError::DuplicatePoint));
        assert_eq!(h.report_hull(), HullEdges::empty());
        assert!(h.point_in_hull(&p(1.0, 1.0)));
        assert!(!h.point_in_hull(&p(1.0, 2.0)));
        h.insert(p(0.0, 0.0)).unwrap();
        let hull = h.report_hull();
        assert_eq!((hull.upper.len(), hull.lower.len()), (1, 1));
    }

    #[test]
    fn square_queries() {
        let h = EilHull::from_points([p(0.0, 0.0), p(0.0, 2.0), p(2.0, 0.0), p(2.0, 2.0)]).unwrap();
        assert!(h.point_in_hull(&p(1.0, 1.0)));
        assert!(!h.point_in_hull(&p(3.0, 1.0)));
        assert!(h.point_in_hull(&p(1.0, 2.0)));
        let r = Rational::from_f64;
        assert_eq!(h.extreme_point((r(0.0), r(1.0))).unwrap(), p(0.0, 2.0));
        assert_eq!(h.extreme_point((r(1.0), r(0.0))).unwrap(), p(2.0, 0.0));
    }

    /// Recomputes every bridge with fresh counters and checks the total
    /// navigation work against the depth of the two children.
    fn check_telescoping(t: &PbtTree<Planar<Rational>>) {
        let _ = t.for_each_internal(|v, _| {
            let n = t.node(v);
            let med = t.node(n.right).lo.clone();
            for side in HullSide::BOTH {
                let c = Counters::default();
                find_bridge(side, t.cursor(side, n.left, 0), t.cursor(side, n.right, 0), &med, &c);
                let bound = 2 * (t.height(n.left) + t.height(n.right)) as u64 + c.bridge_iterations();
                assert!(c.node_visits() <= bound, "{} visits, bound {}", c.node_visits(), bound);
            }
            Ok(())
        });
    }

    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]
        #[test]
        fn agrees_with_ovl(ops in proptest::collection::vec((-8i64..=8, -8i64..=8, any::<bool>()), 1..60), mode in 0usize..3) {
            let mode = [NavMode::Telescoping, NavMode::Restart, NavMode::SearchRanks][mode];
            let mut pbt = EilHull::with_mode(mode);
            let mut ovl = crate::ovl::OvlHull::new();
            for (i, &(x, y, del)) in ops.iter().enumerate() {
                let q = p(x as f64, y as f64);
                if del && pbt.contains(&q) {
                    pbt.delete(&q).unwrap();
                    ovl.delete(&q).unwrap();
                } else if !pbt.contains(&q) {
                    pbt.insert(q.clone()).unwrap();
                    ovl.insert(q).unwrap();
                }
                prop_assert_eq!(pbt.report_hull(), ovl.hull_edges());
                if i % 7 == 0 {
                    prop_assert_eq!(pbt.audit(true), Ok(()));
                }
            }
            prop_assert_eq!(pbt.audit(true), Ok(()));
            if mode == NavMode::Telescoping {
                check_telescoping(&pbt.tree);
            }
        }
    }
}
