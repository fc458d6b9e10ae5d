//! Concatenable queues: AVL trees over the edges of a convex chain, supporting
//! split and join in `O(log n)`.
//!
//! All queues of one hull live in a shared [`CqArena`]; a [`CQueue`] is just a
//! root handle into it. Handles must be used linearly: every operation
//! consumes the queues it is given and returns fresh handles.
//!
//! Each node carries a weight (the rank-extent of its edge in rank mode, zero
//! otherwise) and the weight sum of its subtree. Leaves of the queue are not
//! stored: the missing left (right) child of an edge node stands for the
//! edge's left (right) endpoint.

use std::cmp::Ordering;

use crate::error::HullError;

const NIL: u32 = u32::MAX;

#[derive(Clone, Debug)]
struct CqNode<T> {
    item: Option<T>,
    left: u32,
    right: u32,
    height: i32,
    weight: u64,
    sum: u64,
}

#[derive(Clone, Debug)]
pub struct CqArena<T> {
    nodes: Vec<CqNode<T>>,
    free: Vec<u32>,
}

/// Root handle of one queue. `CQueue::EMPTY` is the empty queue.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CQueue(u32);

impl CQueue {
    pub const EMPTY: CQueue = CQueue(NIL);

    pub fn is_empty(self) -> bool {
        self.0 == NIL
    }
}

impl Default for CQueue {
    fn default() -> Self {
        CQueue::EMPTY
    }
}

/// Position reached while walking a queue from its root.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CqPos {
    /// An edge node.
    Node(u32),
    /// The endpoint standing in for the missing child of `parent`: its left
    /// endpoint when `right_side` is false, its right endpoint otherwise.
    Leaf { parent: u32, right_side: bool },
}

impl<T> Default for CqArena<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T> CqArena<T> {
    pub fn new() -> Self {
        CqArena { nodes: Vec::new(), free: Vec::new() }
    }

    /// Number of live nodes across all queues.
    pub fn live(&self) -> usize {
        self.nodes.len() - self.free.len()
    }

    fn alloc(&mut self, item: T, weight: u64) -> u32 {
        let node = CqNode { item: Some(item), left: NIL, right: NIL, height: 1, weight, sum: weight };
        if let Some(id) = self.free.pop() {
            self.nodes[id as usize] = node;
            id
        } else {
            self.nodes.push(node);
            (self.nodes.len() - 1) as u32
        }
    }

    fn release(&mut self, id: u32) -> T {
        let node = &mut self.nodes[id as usize];
        node.left = NIL;
        node.right = NIL;
        let item = node.item.take().expect("released node twice");
        self.free.push(id);
        item
    }

    #[inline]
    fn h(&self, id: u32) -> i32 {
        if id == NIL {
            0
        } else {
            self.nodes[id as usize].height
        }
    }

    #[inline]
    fn s(&self, id: u32) -> u64 {
        if id == NIL {
            0
        } else {
            self.nodes[id as usize].sum
        }
    }

    #[inline]
    fn fix(&mut self, id: u32) {
        let (l, r) = (self.nodes[id as usize].left, self.nodes[id as usize].right);
        let height = 1 + self.h(l).max(self.h(r));
        let sum = self.s(l) + self.s(r) + self.nodes[id as usize].weight;
        let node = &mut self.nodes[id as usize];
        node.height = height;
        node.sum = sum;
    }

    fn rot_right(&mut self, id: u32) -> u32 {
        let l = self.nodes[id as usize].left;
        self.nodes[id as usize].left = self.nodes[l as usize].right;
        self.nodes[l as usize].right = id;
        self.fix(id);
        self.fix(l);
        l
    }

    fn rot_left(&mut self, id: u32) -> u32 {
        let r = self.nodes[id as usize].right;
        self.nodes[id as usize].right = self.nodes[r as usize].left;
        self.nodes[r as usize].left = id;
        self.fix(id);
        self.fix(r);
        r
    }

    fn rebalance(&mut self, id: u32) -> u32 {
        self.fix(id);
        let (l, r) = (self.nodes[id as usize].left, self.nodes[id as usize].right);
        let bal = self.h(l) - self.h(r);
        if bal > 1 {
            if self.h(self.nodes[l as usize].left) < self.h(self.nodes[l as usize].right) {
                self.nodes[id as usize].left = self.rot_left(l);
            }
            self.rot_right(id)
        } else if bal < -1 {
            if self.h(self.nodes[r as usize].right) < self.h(self.nodes[r as usize].left) {
                self.nodes[id as usize].right = self.rot_right(r);
            }
            self.rot_left(id)
        } else {
            id
        }
    }

    fn join3(&mut self, l: u32, k: u32, r: u32) -> u32 {
        let (hl, hr) = (self.h(l), self.h(r));
        if hl > hr + 1 {
            let lr = self.nodes[l as usize].right;
            let joined = self.join3(lr, k, r);
            self.nodes[l as usize].right = joined;
            self.rebalance(l)
        } else if hr > hl + 1 {
            let rl = self.nodes[r as usize].left;
            let joined = self.join3(l, k, rl);
            self.nodes[r as usize].left = joined;
            self.rebalance(r)
        } else {
            let node = &mut self.nodes[k as usize];
            node.left = l;
            node.right = r;
            self.fix(k);
            k
        }
    }

    /// Detaches the first node; returns (rest, first).
    fn take_first(&mut self, t: u32) -> (u32, u32) {
        let l = self.nodes[t as usize].left;
        if l == NIL {
            let r = self.nodes[t as usize].right;
            self.nodes[t as usize].right = NIL;
            self.fix(t);
            (r, t)
        } else {
            let (rest, first) = self.take_first(l);
            self.nodes[t as usize].left = rest;
            (self.rebalance(t), first)
        }
    }

    fn take_last(&mut self, t: u32) -> (u32, u32) {
        let r = self.nodes[t as usize].right;
        if r == NIL {
            let l = self.nodes[t as usize].left;
            self.nodes[t as usize].left = NIL;
            self.fix(t);
            (l, t)
        } else {
            let (rest, last) = self.take_last(r);
            self.nodes[t as usize].right = rest;
            (self.rebalance(t), last)
        }
    }

    fn split_rec<F: FnMut(&T, u64) -> bool>(&mut self, t: u32, base: u64, goes_left: &mut F) -> (u32, u32) {
        if t == NIL {
            return (NIL, NIL);
        }
        let (l, r) = (self.nodes[t as usize].left, self.nodes[t as usize].right);
        let start = base + self.s(l);
        if goes_left(self.nodes[t as usize].item.as_ref().unwrap(), start) {
            let next = start + self.nodes[t as usize].weight;
            let (rl, rr) = self.split_rec(r, next, goes_left);
            (self.join3(l, t, rl), rr)
        } else {
            let (ll, lr) = self.split_rec(l, base, goes_left);
            (ll, self.join3(lr, t, r))
        }
    }

    pub fn singleton(&mut self, item: T, weight: u64) -> CQueue {
        CQueue(self.alloc(item, weight))
    }

    pub fn from_items<I: IntoIterator<Item = (T, u64)>>(&mut self, items: I) -> CQueue {
        let mut q = CQueue::EMPTY;
        for (item, w) in items {
            let node = self.alloc(item, w);
            q = CQueue(self.join3(q.0, node, NIL));
        }
        q
    }

    /// Splits `q` into the maximal prefix whose items satisfy `goes_left` and
    /// the remainder. `goes_left` must be monotone along the queue.
    pub fn split_by<F: FnMut(&T) -> bool>(&mut self, q: CQueue, mut goes_left: F) -> (CQueue, CQueue) {
        self.split_by_offset(q, 0, |item, _| goes_left(item))
    }

    /// As [`split_by`](Self::split_by), but the predicate also receives the
    /// item's offset: `base` plus the weights of all preceding items.
    pub fn split_by_offset<F: FnMut(&T, u64) -> bool>(&mut self, q: CQueue, base: u64, mut goes_left: F) -> (CQueue, CQueue) {
        let (l, r) = self.split_rec(q.0, base, &mut goes_left);
        (CQueue(l), CQueue(r))
    }

    /// Splits at the item located by `locate` (which returns how the sought
    /// item compares to the given one). The located item heads the right part.
    pub fn split<F: FnMut(&T) -> Ordering>(&mut self, q: CQueue, mut locate: F) -> Result<(CQueue, CQueue), HullError> {
        let (l, r) = self.split_by(q, |item| locate(item) == Ordering::Greater);
        match self.first(r).map(locate) {
            Some(Ordering::Equal) => Ok((l, r)),
            _ => {
                // Restore the queue before reporting.
                let _ = self.join(l, r);
                Err(HullError::EdgeNotFound)
            }
        }
    }

    pub fn join(&mut self, l: CQueue, r: CQueue) -> CQueue {
        if l.is_empty() {
            return r;
        }
        if r.is_empty() {
            return l;
        }
        if self.h(l.0) >= self.h(r.0) {
            let (rest, first) = self.take_first(r.0);
            CQueue(self.join3(l.0, first, rest))
        } else {
            let (rest, last) = self.take_last(l.0);
            CQueue(self.join3(rest, last, r.0))
        }
    }

    /// `l ++ [item] ++ r`.
    pub fn join_around(&mut self, l: CQueue, item: T, weight: u64, r: CQueue) -> CQueue {
        let k = self.alloc(item, weight);
        CQueue(self.join3(l.0, k, r.0))
    }

    /// Removes and returns the first item.
    pub fn pop_first(&mut self, q: CQueue) -> Option<(T, CQueue)> {
        if q.is_empty() {
            return None;
        }
        let (rest, first) = self.take_first(q.0);
        Some((self.release(first), CQueue(rest)))
    }

    pub fn first(&self, q: CQueue) -> Option<&T> {
        let mut t = q.0;
        if t == NIL {
            return None;
        }
        while self.nodes[t as usize].left != NIL {
            t = self.nodes[t as usize].left;
        }
        self.nodes[t as usize].item.as_ref()
    }

    /// Releases every node of `q`.
    pub fn clear(&mut self, q: CQueue) {
        let mut stack = vec![q.0];
        while let Some(t) = stack.pop() {
            if t != NIL {
                stack.push(self.nodes[t as usize].left);
                stack.push(self.nodes[t as usize].right);
                self.release(t);
            }
        }
    }

    pub fn height(&self, q: CQueue) -> i32 {
        self.h(q.0)
    }

    pub fn weight_sum(&self, q: CQueue) -> u64 {
        self.s(q.0)
    }

    pub fn items(&self, q: CQueue) -> Vec<&T> {
        let mut out = Vec::new();
        let mut stack = Vec::new();
        let mut t = q.0;
        while t != NIL || !stack.is_empty() {
            while t != NIL {
                stack.push(t);
                t = self.nodes[t as usize].left;
            }
            let n = stack.pop().unwrap();
            out.push(self.nodes[n as usize].item.as_ref().unwrap());
            t = self.nodes[n as usize].right;
        }
        out
    }

    pub fn len(&self, q: CQueue) -> usize {
        self.items(q).len()
    }

    // Navigation.

    pub fn root(&self, q: CQueue) -> Option<CqPos> {
        (!q.is_empty()).then_some(CqPos::Node(q.0))
    }

    pub fn item(&self, id: u32) -> &T {
        self.nodes[id as usize].item.as_ref().unwrap()
    }

    pub fn node_weight(&self, id: u32) -> u64 {
        self.nodes[id as usize].weight
    }

    pub fn left_weight(&self, id: u32) -> u64 {
        self.s(self.nodes[id as usize].left)
    }

    pub fn left_child(&self, pos: CqPos) -> Result<CqPos, HullError> {
        match pos {
            CqPos::Node(id) => {
                let l = self.nodes[id as usize].left;
                Ok(if l == NIL { CqPos::Leaf { parent: id, right_side: false } } else { CqPos::Node(l) })
            }
            CqPos::Leaf { .. } => Err(HullError::NoPredecessor),
        }
    }

    pub fn right_child(&self, pos: CqPos) -> Result<CqPos, HullError> {
        match pos {
            CqPos::Node(id) => {
                let r = self.nodes[id as usize].right;
                Ok(if r == NIL { CqPos::Leaf { parent: id, right_side: true } } else { CqPos::Node(r) })
            }
            CqPos::Leaf { .. } => Err(HullError::NoSuccessor),
        }
    }

    /// Checks AVL balance and weight sums; returns the height.
    pub fn audit(&self, q: CQueue) -> Result<i32, String> {
        self.audit_rec(q.0).map(|(h, _)| h)
    }

    fn audit_rec(&self, t: u32) -> Result<(i32, u64), String> {
        if t == NIL {
            return Ok((0, 0));
        }
        let n = &self.nodes[t as usize];
        if n.item.is_none() {
            return Err(format!("node {t} is released but still linked"));
        }
        let (hl, sl) = self.audit_rec(n.left)?;
        let (hr, sr) = self.audit_rec(n.right)?;
        if (hl - hr).abs() > 1 {
            return Err(format!("node {t} unbalanced ({hl} vs {hr})"));
        }
        if n.height != 1 + hl.max(hr) {
            return Err(format!("node {t} has stale height"));
        }
        if n.sum != sl + sr + n.weight {
            return Err(format!("node {t} has stale weight sum"));
        }
        Ok((n.height, n.sum))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn build(arena: &mut CqArena<u32>, items: &[u32]) -> CQueue {
        arena.from_items(items.iter().map(|&i| (i, i as u64)))
    }

    fn contents(arena: &CqArena<u32>, q: CQueue) -> Vec<u32> {
        arena.items(q).into_iter().copied().collect()
    }

    #[test]
    fn split_places_pivot_right() {
        let mut a = CqArena::new();
        let q = build(&mut a, &[1, 2, 3]);
        let (l, r) = a.split(q, |&x| 2.cmp(&x)).unwrap();
        assert_eq!(contents(&a, l), vec![1]);
        assert_eq!(contents(&a, r), vec![2, 3]);
        let q = build(&mut a, &[7]);
        let (l, r) = a.split(q, |&x| 7.cmp(&x)).unwrap();
        assert!(l.is_empty());
        assert_eq!(contents(&a, r), vec![7]);
    }

    #[test]
    fn split_reports_missing_pivot_and_keeps_queue() {
        let mut a = CqArena::new();
        let q = build(&mut a, &[1, 3, 5]);
        assert_eq!(a.split(q, |&x| 4.cmp(&x)), Err(HullError::EdgeNotFound));
        assert_eq!(a.live(), 3);
    }

    #[test]
    fn join_examples() {
        let mut a = CqArena::new();
        let r = build(&mut a, &[1]);
        let j = a.join(CQueue::EMPTY, r);
        assert_eq!(contents(&a, j), vec![1]);
        let l = build(&mut a, &[1]);
        let r = build(&mut a, &[2, 3]);
        let j = a.join(l, r);
        assert_eq!(contents(&a, j), vec![1, 2, 3]);
    }

    #[test]
    fn join_around_large_queues_stays_balanced() {
        let mut a = CqArena::new();
        let l = build(&mut a, &(0..100).collect::<Vec<_>>());
        let r = build(&mut a, &(101..201).collect::<Vec<_>>());
        let j = a.join_around(l, 100, 100, r);
        assert_eq!(contents(&a, j), (0..201).collect::<Vec<_>>());
        a.audit(j).unwrap();
        assert_eq!(a.weight_sum(j), (0..201u64).sum::<u64>());
    }

    #[test]
    fn navigation_of_three_node_queue() {
        let mut a = CqArena::new();
        let q = build(&mut a, &[1, 2, 3]);
        let root = a.root(q).unwrap();
        let CqPos::Node(id) = root else { panic!() };
        assert_eq!(*a.item(id), 2);
        let left = a.left_child(root).unwrap();
        let CqPos::Node(lid) = left else { panic!() };
        assert_eq!(*a.item(lid), 1);
        let leaf = a.left_child(left).unwrap();
        assert_eq!(leaf, CqPos::Leaf { parent: lid, right_side: false });
        assert_eq!(a.left_child(leaf), Err(HullError::NoPredecessor));

        let single = build(&mut a, &[9]);
        let root = a.root(single).unwrap();
        assert!(matches!(a.left_child(root).unwrap(), CqPos::Leaf { right_side: false, .. }));
        assert!(matches!(a.right_child(root).unwrap(), CqPos::Leaf { right_side: true, .. }));
    }

    #[derive(Debug, Clone)]
    enum Op {
        Split(usize, usize),
        Join(usize, usize),
        JoinAround(usize, usize),
        PopFirst(usize),
    }

    fn op() -> impl Strategy<Value = Op> {
        prop_oneof![
            (0usize..4, 0usize..64).prop_map(|(q, k)| Op::Split(q, k)),
            (0usize..4, 0usize..4).prop_map(|(a, b)| Op::Join(a, b)),
            (0usize..4, 0usize..4).prop_map(|(a, b)| Op::JoinAround(a, b)),
            (0usize..4).prop_map(Op::PopFirst),
        ]
    }

    proptest! {
        // Queues hold increasing runs; joins are only applied when order is kept,
        // mirroring how hull chains are combined.
        #[test]
        fn matches_list_model(ops in proptest::collection::vec(op(), 1..60)) {
            let mut a = CqArena::new();
            let mut next = 0u32;
            let mut queues = Vec::new();
            let mut model: Vec<Vec<u32>> = Vec::new();
            for len in [5usize, 1, 0, 12] {
                let items: Vec<u32> = (next..next + len as u32).collect();
                next += len as u32 + 1000;
                queues.push(build(&mut a, &items));
                model.push(items);
            }
            for op in ops {
                match op {
                    Op::Split(i, k) => {
                        let pivot = if model[i].is_empty() { 0 } else { model[i][k % model[i].len()] + (k % 2) as u32 };
                        let (l, r) = a.split_by(queues[i], |&x| x < pivot);
                        let cut = model[i].iter().position(|&x| x >= pivot).unwrap_or(model[i].len());
                        let tail = model[i].split_off(cut);
                        let j = (i + 1) % 4;
                        // Park the right part in an empty slot if there is one.
                        if model[j].is_empty() {
                            queues[i] = l;
                            queues[j] = r;
                            model[j] = tail;
                        } else {
                            queues[i] = a.join(l, r);
                            model[i].extend(tail);
                        }
                    }
                    Op::Join(i, j) if i != j => {
                        let ordered = match (model[i].last(), model[j].first()) {
                            (Some(x), Some(y)) => x < y,
                            _ => true,
                        };
                        if ordered {
                            queues[i] = a.join(queues[i], queues[j]);
                            queues[j] = CQueue::EMPTY;
                            let moved = std::mem::take(&mut model[j]);
                            model[i].extend(moved);
                        }
                    }
                    Op::JoinAround(i, j) if i != j => {
                        let lo = model[i].last().copied();
                        let hi = model[j].first().copied();
                        let mid = match (lo, hi) {
                            (Some(x), Some(y)) if y > x + 1 => Some(x + 1),
                            (Some(x), None) => Some(x + 1),
                            (None, Some(y)) if y > 0 => Some(y - 1),
                            (None, None) => Some(next),
                            _ => None,
                        };
                        if let Some(mid) = mid {
                            queues[i] = a.join_around(queues[i], mid, mid as u64, queues[j]);
                            queues[j] = CQueue::EMPTY;
                            model[i].push(mid);
                            let moved = std::mem::take(&mut model[j]);
                            model[i].extend(moved);
                        }
                    }
                    Op::PopFirst(i) => {
                        if let Some((x, rest)) = a.pop_first(queues[i]) {
                            prop_assert_eq!(x, model[i].remove(0));
                            queues[i] = rest;
                        }
                    }
                    _ => {}
                }
                for (q, m) in queues.iter().zip(&model) {
                    prop_assert_eq!(&contents(&a, *q), m);
                    let h = a.audit(*q).unwrap();
                    let n = m.len() as f64;
                    prop_assert!((h as f64) <= 1.45 * (n + 2.0).log2());
                    prop_assert_eq!(a.weight_sum(*q), m.iter().map(|&x| x as u64).sum::<u64>());
                }
            }
        }
    }
}
