//! Partial hull tree: a leaf-based AVL tree whose internal nodes store their
//! upper and lower bridges together with the part of each child's chain
//! that does not survive into the node's own chain. The chains of the root
//! are kept whole, so the hull is always available as a balanced tree.
//!
//! Updates walk down the search path, reassembling each child's chain from
//! the parent's (split at the bridge, join with the stored remainder), and
//! walk back up recomputing bridges and cutting chains apart again.

use std::cmp::Ordering;

use crate::bridge::{chain_contains, chain_extreme, find_bridge, ChainCursor, Counters};
use crate::cqueue::{CQueue, CqArena, CqPos};
use crate::embed::{Embedding, Planar, Vertex, VertexPair};
use crate::error::HullError;
use crate::kernel::{HullEdge, HullSide, Point};
use crate::oracle::{brute_bridge_side, static_hull, HullEdges};
use crate::scalar::Scalar;

pub(crate) const NIL: u32 = u32::MAX;

type Chains = [CQueue; 2];
const NO_CHAINS: Chains = [CQueue::EMPTY; 2];

#[derive(Clone, Debug)]
struct Node<E: Embedding> {
    left: u32,
    right: u32,
    height: i32,
    size: usize,
    /// Smallest key of the subtree (the key itself for a leaf).
    lo: E::Key,
    bridge: [Option<E::Bridge>; 2],
    /// Tail of the left child's chain from the bridge's left endpoint on.
    star_left: Chains,
    /// Head of the right child's chain up to the bridge's right endpoint.
    star_right: Chains,
}

/// Cursor over a chain stored in a c-queue, or over a one-point chain.
pub(crate) enum QueueCursor<'a, E: Embedding> {
    Single(Vertex<E::S>),
    Queue { arena: &'a CqArena<E::Link>, pos: CqPos, span: usize },
}

impl<E: Embedding> ChainCursor<E::S> for QueueCursor<'_, E> {
    fn is_leaf(&self) -> bool {
        match self {
            QueueCursor::Single(_) => true,
            QueueCursor::Queue { pos, .. } => matches!(pos, CqPos::Leaf { .. }),
        }
    }

    fn vertex(&self) -> Vertex<E::S> {
        match self {
            QueueCursor::Single(v) => v.clone(),
            QueueCursor::Queue { arena, pos: CqPos::Leaf { parent, right_side }, span } => {
                let link = arena.item(*parent);
                if *right_side {
                    E::decode_link(link, span - arena.node_weight(*parent) as usize).1
                } else {
                    E::decode_link(link, *span).0
                }
            }
            QueueCursor::Queue { .. } => unreachable!("vertex of an edge cursor"),
        }
    }

    fn edge(&self) -> (Vertex<E::S>, Vertex<E::S>) {
        match self {
            QueueCursor::Queue { arena, pos: CqPos::Node(id), span } => {
                E::decode_link(arena.item(*id), span + arena.left_weight(*id) as usize)
            }
            _ => unreachable!("edge of a leaf cursor"),
        }
    }

    fn go_left(&mut self) {
        if let QueueCursor::Queue { arena, pos, .. } = self {
            *pos = arena.left_child(*pos).expect("descending below a leaf");
        }
    }

    fn go_right(&mut self) {
        if let QueueCursor::Queue { arena, pos, span } = self {
            if let CqPos::Node(id) = *pos {
                *span += (arena.left_weight(id) + arena.node_weight(id)) as usize;
            }
            *pos = arena.right_child(*pos).expect("descending below a leaf");
        }
    }
}

/// The engine shared by the planar and the rank-based c-queue structures.
#[derive(Debug)]
pub(crate) struct OvlTree<E: Embedding> {
    nodes: Vec<Node<E>>,
    free: Vec<u32>,
    root: u32,
    queues: [CqArena<E::Link>; 2],
    root_chains: Chains,
    poisoned: bool,
    pub counters: Counters,
}

impl<E: Embedding> Default for OvlTree<E> {
    fn default() -> Self {
        Self::new()
    }
}

impl<E: Embedding> OvlTree<E> {
    pub fn new() -> Self {
        OvlTree {
            nodes: Vec::new(),
            free: Vec::new(),
            root: NIL,
            queues: [CqArena::new(), CqArena::new()],
            root_chains: NO_CHAINS,
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
    fn node_mut(&mut self, id: u32) -> &mut Node<E> {
        &mut self.nodes[id as usize]
    }

    #[inline]
    fn is_leaf(&self, id: u32) -> bool {
        self.node(id).left == NIL
    }

    fn height(&self, id: u32) -> i32 {
        self.node(id).height
    }

    fn alloc(&mut self, lo: E::Key) -> u32 {
        let node = Node {
            left: NIL,
            right: NIL,
            height: 1,
            size: 1,
            lo,
            bridge: [None, None],
            star_left: NO_CHAINS,
            star_right: NO_CHAINS,
        };
        if let Some(id) = self.free.pop() {
            self.nodes[id as usize] = node;
            id
        } else {
            self.nodes.push(node);
            (self.nodes.len() - 1) as u32
        }
    }

    fn release(&mut self, id: u32) {
        self.free.push(id);
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

    fn cursor(&self, side: HullSide, q: CQueue, node: u32, base: usize) -> QueueCursor<'_, E> {
        match self.queues[side.index()].root(q) {
            None => QueueCursor::Single(E::vertex(&self.node(node).lo, base)),
            Some(pos) => QueueCursor::Queue { arena: &self.queues[side.index()], pos, span: base },
        }
    }

    /// Computes the bridges of `v` from the chains of its children and
    /// returns the chains of `v`. The children must already be linked.
    fn merge(&mut self, v: u32, hx: Chains, hy: Chains) -> Chains {
        let (x, y) = (self.node(v).left, self.node(v).right);
        let med_rank = self.node(x).size;
        let mut out = NO_CHAINS;
        for side in HullSide::BOTH {
            let s = side.index();
            let med = E::vertex(&self.node(y).lo, med_rank).p;
            let (a, b) = find_bridge(
                side,
                self.cursor(side, hx[s], x, 0),
                self.cursor(side, hy[s], y, med_rank),
                &med,
                &self.counters,
            );
            let arena = &mut self.queues[s];
            let (prefix, star_x) = arena.split_by_offset(hx[s], 0, |l, r| E::link_precedes(l, r as usize, &a));
            let (star_y, suffix) =
                arena.split_by_offset(hy[s], med_rank as u64, |l, r| E::link_precedes(l, r as usize, &b));
            let (link, weight) = E::encode_link(&a, &b);
            out[s] = arena.join_around(prefix, link, weight, suffix);
            let node = self.node_mut(v);
            node.bridge[s] = Some(E::encode_bridge(&a, &b, med_rank));
            node.star_left[s] = star_x;
            node.star_right[s] = star_y;
        }
        out
    }

    /// Inverse of `merge`: recovers the children's chains from the chains of
    /// `v`, leaving `v` without bridges.
    fn expand(&mut self, v: u32, hv: Chains) -> Result<(Chains, Chains), HullError> {
        let med_rank = self.node(self.node(v).left).size;
        let (mut hx, mut hy) = (NO_CHAINS, NO_CHAINS);
        for side in HullSide::BOTH {
            let s = side.index();
            let bridge = self.node_mut(v).bridge[s].take().ok_or(HullError::Corrupted("node without bridge"))?;
            let (a, b) = E::decode_bridge(&bridge, med_rank);
            let arena = &mut self.queues[s];
            let (prefix, rest) = arena.split_by_offset(hv[s], 0, |l, r| E::link_precedes(l, r as usize, &a));
            let (link, suffix) = arena.pop_first(rest).ok_or(HullError::Corrupted("bridge missing from chain"))?;
            if E::decode_link(&link, a.rank) != (a, b) {
                return Err(HullError::Corrupted("chain edge differs from stored bridge"));
            }
            let node = &mut self.nodes[v as usize];
            let star_x = std::mem::take(&mut node.star_left[s]);
            let star_y = std::mem::take(&mut node.star_right[s]);
            hx[s] = arena.join(prefix, star_x);
            hy[s] = arena.join(star_y, suffix);
        }
        Ok((hx, hy))
    }

    fn attach(&mut self, v: u32, l: u32, r: u32, hl: Chains, hr: Chains) -> Chains {
        let height = 1 + self.height(l).max(self.height(r));
        let size = self.node(l).size + self.node(r).size;
        let lo = self.node(l).lo.clone();
        let node = self.node_mut(v);
        node.left = l;
        node.right = r;
        node.height = height;
        node.size = size;
        node.lo = lo;
        self.merge(v, hl, hr)
    }

    /// Links `l` and `r` under `v`, rotating if the heights differ by two.
    fn balance(&mut self, v: u32, l: u32, r: u32, hl: Chains, hr: Chains) -> Result<(u32, Chains), HullError> {
        let (h_l, h_r) = (self.height(l), self.height(r));
        if h_l > h_r + 1 {
            let (ll, lr) = (self.node(l).left, self.node(l).right);
            let (hll, hlr) = self.expand(l, hl)?;
            if self.height(ll) < self.height(lr) {
                let (lrl, lrr) = (self.node(lr).left, self.node(lr).right);
                let (hlrl, hlrr) = self.expand(lr, hlr)?;
                let h_new_l = self.attach(l, ll, lrl, hll, hlrl);
                let h_new_v = self.attach(v, lrr, r, hlrr, hr);
                Ok((lr, self.attach(lr, l, v, h_new_l, h_new_v)))
            } else {
                let h_new_v = self.attach(v, lr, r, hlr, hr);
                Ok((l, self.attach(l, ll, v, hll, h_new_v)))
            }
        } else if h_r > h_l + 1 {
            let (rl, rr) = (self.node(r).left, self.node(r).right);
            let (hrl, hrr) = self.expand(r, hr)?;
            if self.height(rr) < self.height(rl) {
                let (rll, rlr) = (self.node(rl).left, self.node(rl).right);
                let (hrll, hrlr) = self.expand(rl, hrl)?;
                let h_new_v = self.attach(v, l, rll, hl, hrll);
                let h_new_r = self.attach(r, rlr, rr, hrlr, hrr);
                Ok((rl, self.attach(rl, v, r, h_new_v, h_new_r)))
            } else {
                let h_new_v = self.attach(v, l, rl, hl, hrl);
                Ok((r, self.attach(r, v, rr, h_new_v, hrr)))
            }
        } else {
            Ok((v, self.attach(v, l, r, hl, hr)))
        }
    }

    fn insert_rec(&mut self, v: u32, key: &E::Key, hv: Chains) -> Result<(u32, Chains), HullError> {
        if self.is_leaf(v) {
            let w = self.alloc(key.clone());
            let u = self.alloc(key.clone());
            let (a, b) = if E::key_cmp(key, &self.node(v).lo) == Ordering::Less { (w, v) } else { (v, w) };
            return Ok((u, self.attach(u, a, b, NO_CHAINS, NO_CHAINS)));
        }
        let (l, r) = (self.node(v).left, self.node(v).right);
        let (hl, hr) = self.expand(v, hv)?;
        if E::key_cmp(key, &self.node(r).lo) == Ordering::Less {
            let (l, hl) = self.insert_rec(l, key, hl)?;
            self.balance(v, l, r, hl, hr)
        } else {
            let (r, hr) = self.insert_rec(r, key, hr)?;
            self.balance(v, l, r, hl, hr)
        }
    }

    /// Returns the new subtree root, or `NIL` when the subtree was the
    /// deleted leaf.
    fn delete_rec(&mut self, v: u32, key: &E::Key, hv: Chains) -> Result<(u32, Chains), HullError> {
        if self.is_leaf(v) {
            self.release(v);
            return Ok((NIL, NO_CHAINS));
        }
        let (l, r) = (self.node(v).left, self.node(v).right);
        let (hl, hr) = self.expand(v, hv)?;
        if E::key_cmp(key, &self.node(r).lo) == Ordering::Less {
            let (l, hl) = self.delete_rec(l, key, hl)?;
            if l == NIL {
                self.release(v);
                return Ok((r, hr));
            }
            self.balance(v, l, r, hl, hr)
        } else {
            let (r, hr) = self.delete_rec(r, key, hr)?;
            if r == NIL {
                self.release(v);
                return Ok((l, hl));
            }
            self.balance(v, l, r, hl, hr)
        }
    }

    fn guard<T>(&mut self, result: Result<T, HullError>) -> Result<T, HullError> {
        if result.is_err() {
            self.poisoned = true;
        }
        result
    }

    pub fn insert(&mut self, key: E::Key) -> Result<(), HullError> {
        if self.poisoned {
            return Err(HullError::Corrupted("structure refused update after earlier failure"));
        }
        if self.contains(&key) {
            return Err(HullError::DuplicatePoint);
        }
        if self.root == NIL {
            self.root = self.alloc(key);
            return Ok(());
        }
        let hv = std::mem::take(&mut self.root_chains);
        let result = self.insert_rec(self.root, &key, hv);
        let (root, chains) = self.guard(result)?;
        self.root = root;
        self.root_chains = chains;
        Ok(())
    }

    pub fn delete(&mut self, key: &E::Key) -> Result<(), HullError> {
        if self.poisoned {
            return Err(HullError::Corrupted("structure refused update after earlier failure"));
        }
        if !self.contains(key) {
            return Err(HullError::PointNotFound);
        }
        let hv = std::mem::take(&mut self.root_chains);
        let result = self.delete_rec(self.root, key, hv);
        let (root, chains) = self.guard(result)?;
        self.root = root;
        self.root_chains = chains;
        Ok(())
    }

    pub fn keys(&self) -> Vec<E::Key> {
        let mut out = Vec::with_capacity(self.len());
        self.collect_keys(self.root, &mut out);
        out
    }

    fn collect_keys(&self, v: u32, out: &mut Vec<E::Key>) {
        if v == NIL {
            return;
        }
        if self.is_leaf(v) {
            out.push(self.node(v).lo.clone());
        } else {
            self.collect_keys(self.node(v).left, out);
            self.collect_keys(self.node(v).right, out);
        }
    }

    fn last_key(&self) -> Option<&E::Key> {
        let mut v = self.root;
        if v == NIL {
            return None;
        }
        while !self.is_leaf(v) {
            v = self.node(v).right;
        }
        Some(&self.node(v).lo)
    }

    fn chain_edges(&self, side: HullSide, q: CQueue, base: usize) -> Vec<HullEdge<E::S>> {
        let arena = &self.queues[side.index()];
        let mut rank = base;
        let mut out = Vec::new();
        for link in arena.items(q) {
            let (a, b) = E::decode_link(link, rank);
            rank = b.rank;
            out.push(HullEdge::new(a.p, b.p));
        }
        out
    }

    pub fn hull_edges(&self) -> HullEdges<E::S> {
        HullEdges {
            upper: self.chain_edges(HullSide::Upper, self.root_chains[0], 0),
            lower: self.chain_edges(HullSide::Lower, self.root_chains[1], 0),
        }
    }

    /// Bridge between the hull of `self` and that of `right`, whose keys all
    /// follow the keys of `self`. Ranks of `right` continue those of `self`.
    pub fn bridge_with(&self, right: &Self, side: HullSide) -> Result<VertexPair<E::S>, HullError> {
        if self.root == NIL || right.root == NIL {
            return Err(HullError::EmptySide);
        }
        let base = self.len();
        let med = E::vertex(&right.node(right.root).lo, base).p;
        let s = side.index();
        Ok(find_bridge(
            side,
            self.cursor(side, self.root_chains[s], self.root, 0),
            right.cursor(side, right.root_chains[s], right.root, base),
            &med,
            &self.counters,
        ))
    }

    pub fn point_in_hull(&self, q: &Point<E::S>) -> bool {
        let Some(last) = self.last_key() else {
            return false;
        };
        let first = E::vertex(&self.node(self.root).lo, 0).p;
        let last = E::vertex(last, self.len() - 1).p;
        if q.lex_cmp(&first) == Ordering::Less || q.lex_cmp(&last) == Ordering::Greater {
            return false;
        }
        HullSide::BOTH
            .iter()
            .all(|&side| chain_contains(side, self.cursor(side, self.root_chains[side.index()], self.root, 0), q))
    }

    pub fn extreme_point(&self, dir: &(E::S, E::S)) -> Result<Point<E::S>, HullError> {
        if self.root == NIL {
            return Err(HullError::EmptyHull);
        }
        if dir.0.sign() == Ordering::Equal && dir.1.sign() == Ordering::Equal {
            return Err(HullError::ZeroDirection);
        }
        let side = if dir.1.sign() == Ordering::Greater { HullSide::Upper } else { HullSide::Lower };
        Ok(chain_extreme(self.cursor(side, self.root_chains[side.index()], self.root, 0), dir).p)
    }

    /// Checks tree shape, bookkeeping and the root chains. With `deep`, also
    /// compares every bridge and every stored chain piece against the oracle
    /// (quadratic or worse; meant for small trees).
    pub fn audit(&self, deep: bool) -> Result<(), String> {
        if self.root != NIL {
            self.audit_shape(self.root)?;
        }
        for s in 0..2 {
            self.queues[s].audit(self.root_chains[s])?;
        }
        let keys = self.keys();
        let points: Vec<Point<E::S>> = keys.iter().enumerate().map(|(i, k)| E::vertex(k, i).p).collect();
        if self.hull_edges() != static_hull(&points) {
            return Err("root chains differ from the static hull".into());
        }
        if deep && self.root != NIL {
            self.audit_deep(self.root, &keys)?;
        }
        Ok(())
    }

    fn audit_shape(&self, v: u32) -> Result<(), String> {
        let n = self.node(v);
        if self.is_leaf(v) {
            return if n.height == 1 && n.size == 1 { Ok(()) } else { Err("bad leaf bookkeeping".into()) };
        }
        self.audit_shape(n.left)?;
        self.audit_shape(n.right)?;
        let (l, r) = (self.node(n.left), self.node(n.right));
        if (l.height - r.height).abs() > 1 {
            return Err("tree is unbalanced".into());
        }
        if n.height != 1 + l.height.max(r.height) || n.size != l.size + r.size {
            return Err("stale height or size".into());
        }
        if n.lo != l.lo || E::key_cmp(&l.lo, &r.lo) != Ordering::Less {
            return Err("stale or misordered smallest key".into());
        }
        for s in 0..2 {
            self.queues[s].audit(n.star_left[s])?;
            self.queues[s].audit(n.star_right[s])?;
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

    /// `keys` are the keys of the subtree of `v`, in order.
    fn audit_deep(&self, v: u32, keys: &[E::Key]) -> Result<(), String> {
        if self.is_leaf(v) {
            return Ok(());
        }
        let n = self.node(v);
        let split = self.node(n.left).size;
        let points: Vec<Vertex<E::S>> = keys.iter().enumerate().map(|(i, k)| E::vertex(k, i)).collect();
        let (left, right) = points.split_at(split);
        let lp: Vec<_> = left.iter().map(|v| v.p.clone()).collect();
        let rp: Vec<_> = right.iter().map(|v| v.p.clone()).collect();
        for side in HullSide::BOTH {
            let s = side.index();
            let want = brute_bridge_side(side, &lp, &rp);
            let stored = n.bridge[s].as_ref().ok_or("missing bridge")?;
            let (a, b) = E::decode_bridge(stored, split);
            if a.p != want.left || b.p != want.right {
                return Err(format!("node bridge {}-{} differs from brute force {}", a.p, b.p, want));
            }
            // Stored pieces: the left chain from a on, the right chain up to b.
            let lchain = static_hull(&lp);
            let rchain = static_hull(&rp);
            let tail: Vec<_> =
                lchain.side(side).iter().filter(|e| e.left.lex_cmp(&a.p) != Ordering::Less).cloned().collect();
            let head: Vec<_> =
                rchain.side(side).iter().filter(|e| e.right.lex_cmp(&b.p) != Ordering::Greater).cloned().collect();
            if self.chain_edges(side, n.star_left[s], a.rank) != tail {
                return Err("left remainder differs from the left chain's tail".into());
            }
            if self.chain_edges(side, n.star_right[s], split) != head {
                return Err("right remainder differs from the right chain's head".into());
            }
        }
        self.audit_deep(n.left, &keys[..split])?;
        self.audit_deep(n.right, &keys[split..])
    }
}

/// Dynamic convex hull of a planar point set, kept as a partial hull tree
/// with concatenable queues. Updates take `O(log² n)` worst case; the hull
/// is available at the root at all times.
#[derive(Debug)]
pub struct OvlHull<S: Scalar> {
    tree: OvlTree<Planar<S>>,
}

impl<S: Scalar> Default for OvlHull<S> {
    fn default() -> Self {
        Self::new()
    }
}

impl<S: Scalar> OvlHull<S> {
    pub fn new() -> Self {
        OvlHull { tree: OvlTree::new() }
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

    pub fn insert(&mut self, p: Point<S>) -> Result<(), HullError> {
        self.tree.insert(p)
    }

    pub fn delete(&mut self, p: &Point<S>) -> Result<(), HullError> {
        self.tree.delete(p)
    }

    pub fn contains(&self, p: &Point<S>) -> bool {
        self.tree.contains(p)
    }

    /// Stored points in lexicographic order.
    pub fn points(&self) -> Vec<Point<S>> {
        self.tree.keys()
    }

    pub fn hull_edges(&self) -> HullEdges<S> {
        self.tree.hull_edges()
    }

    /// Whether `q` lies inside or on the boundary of the hull.
    pub fn point_in_hull(&self, q: &Point<S>) -> bool {
        self.tree.point_in_hull(q)
    }

    /// A stored point maximizing the dot product with `dir`; the
    /// lexicographically smallest one on ties.
    pub fn extreme_point(&self, dir: (S, S)) -> Result<Point<S>, HullError> {
        self.tree.extreme_point(&dir)
    }

    /// Bridge between this hull and `right`, whose points must all follow
    /// this hull's points lexicographically.
    pub fn bridge_with(&self, right: &Self, side: HullSide) -> Result<HullEdge<S>, HullError> {
        let (a, b) = self.tree.bridge_with(&right.tree, side)?;
        Ok(HullEdge::new(a.p, b.p))
    }

    pub fn counters(&self) -> &Counters {
        &self.tree.counters
    }

    pub fn audit(&self, deep: bool) -> Result<(), String> {
        self.tree.audit(deep)
    }
}
