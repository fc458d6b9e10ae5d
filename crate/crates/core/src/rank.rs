//! Convex hulls of rank-value point sets.
//!
//! A set of distinct values `Y` is seen as the points `(i, y_i)`, where
//! `y_i` is the `i`-th smallest value. Inserting or deleting a value shifts
//! the x-coordinate of every point to its right, so the tree stores bridges
//! relative to node medians and chain edges by their rank extent; a bridge
//! not on the updated leaf's path keeps the same stored tuple.

use crate::bridge::Counters;
use crate::eilice::{NavMode, PbtTree};
use crate::embed::{ImplicitBridge, Ranked};
use crate::error::HullError;
use crate::kernel::{HullSide, Point};
use crate::oracle::HullEdges;
use crate::ovl::OvlTree;
use crate::scalar::Scalar;

/// Which engine maintains the hull.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankVariant {
    /// Partial hull tree with concatenable queues weighted by rank extent.
    CQueue,
    /// Bridge tree navigated with ranks carried along the descent.
    Navigation,
    /// Bridge tree that finds every rank by searching `Y` from the top.
    /// Slower by a log factor; kept as a reference.
    NaiveRank,
}

#[derive(Debug)]
enum Engine<S: Scalar> {
    Queue(OvlTree<Ranked<S>>),
    Bridges(PbtTree<Ranked<S>>),
}

/// Bridges stored at one internal node, identified by its smallest and
/// largest value.
#[derive(Clone, Debug, PartialEq)]
pub struct NodeBridges<S> {
    pub first: S,
    pub last: S,
    pub size: usize,
    pub upper: ImplicitBridge<S>,
    pub lower: ImplicitBridge<S>,
}

/// Dynamic convex hull of `{(rank(y), y) : y in Y}`.
#[derive(Debug)]
pub struct RankHull<S: Scalar> {
    engine: Engine<S>,
    variant: RankVariant,
}

macro_rules! engine {
    ($self:expr, $t:ident => $body:expr) => {
        match &$self.engine {
            Engine::Queue($t) => $body,
            Engine::Bridges($t) => $body,
        }
    };
    (mut $self:expr, $t:ident => $body:expr) => {
        match &mut $self.engine {
            Engine::Queue($t) => $body,
            Engine::Bridges($t) => $body,
        }
    };
}

fn value_error(e: HullError) -> HullError {
    match e {
        HullError::DuplicatePoint => HullError::DuplicateValue,
        HullError::PointNotFound => HullError::ValueNotFound,
        other => other,
    }
}

impl<S: Scalar> RankHull<S> {
    pub fn new(variant: RankVariant) -> Self {
        let engine = match variant {
            RankVariant::CQueue => Engine::Queue(OvlTree::new()),
            RankVariant::Navigation => Engine::Bridges(PbtTree::new(NavMode::Telescoping)),
            RankVariant::NaiveRank => Engine::Bridges(PbtTree::new(NavMode::SearchRanks)),
        };
        RankHull { engine, variant }
    }

    pub fn from_values<I: IntoIterator<Item = S>>(variant: RankVariant, values: I) -> Result<Self, HullError> {
        let mut h = Self::new(variant);
        for y in values {
            h.insert_value(y)?;
        }
        Ok(h)
    }

    pub fn variant(&self) -> RankVariant {
        self.variant
    }

    pub fn len(&self) -> usize {
        engine!(self, t => t.len())
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn insert_value(&mut self, y: S) -> Result<(), HullError> {
        engine!(mut self, t => t.insert(y)).map_err(value_error)
    }

    pub fn delete_value(&mut self, y: &S) -> Result<(), HullError> {
        engine!(mut self, t => t.delete(y)).map_err(value_error)
    }

    pub fn contains_value(&self, y: &S) -> bool {
        engine!(self, t => t.contains(y))
    }

    /// Stored values in increasing order.
    pub fn values(&self) -> Vec<S> {
        engine!(self, t => t.keys())
    }

    /// The points `(rank, value)`.
    pub fn points(&self) -> Vec<Point<S>> {
        self.values().into_iter().enumerate().map(|(i, y)| Point::new(S::from_usize(i), y)).collect()
    }

    /// Hull chains in `(rank, value)` coordinates.
    pub fn report_hull(&self) -> HullEdges<S> {
        match &self.engine {
            Engine::Queue(t) => t.hull_edges(),
            Engine::Bridges(t) => t.report_hull(),
        }
    }

    pub fn point_in_hull(&self, q: &Point<S>) -> bool {
        engine!(self, t => t.point_in_hull(q))
    }

    pub fn extreme_point(&self, dir: (S, S)) -> Result<Point<S>, HullError> {
        engine!(self, t => t.extreme_point(&dir))
    }

    pub fn counters(&self) -> &Counters {
        engine!(self, t => &t.counters)
    }

    /// Stored tuples of every internal node.
    pub fn node_bridges(&self) -> Vec<NodeBridges<S>> {
        let values = self.values();
        let nodes = engine!(self, t => t.node_bridges());
        nodes
            .into_iter()
            .map(|(base, _, size, [upper, lower])| NodeBridges {
                first: values[base].clone(),
                last: values[base + size - 1].clone(),
                size,
                upper,
                lower,
            })
            .collect()
    }

    /// Engine audit plus the width check: every stored bridge, placed at
    /// its node's true median rank, lands on the true ranks of its values.
    pub fn audit(&self, deep: bool) -> Result<(), String> {
        engine!(self, t => t.audit(deep))?;
        let values = self.values();
        let nodes = engine!(self, t => t.node_bridges());
        for (_, med_rank, _, bridges) in nodes {
            for (side, ib) in HullSide::BOTH.iter().zip(&bridges) {
                let r1 = med_rank.checked_sub(ib.w1).ok_or("left width exceeds the median rank")?;
                let r2 = med_rank + ib.w2;
                if values.get(r1) != Some(&ib.y1) || values.get(r2) != Some(&ib.y2) {
                    return Err(format!("{side:?} bridge widths disagree with the ranks of its values"));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::HullEdge;
    use crate::oracle::{naive_point_in_hull, static_hull};
    use crate::scalar::Rational;
    use proptest::prelude::*;

    const VARIANTS: [RankVariant; 3] = [RankVariant::CQueue, RankVariant::Navigation, RankVariant::NaiveRank];

    fn r(v: f64) -> Rational {
        Rational::from_f64(v)
    }

    fn p(x: f64, y: f64) -> Point<Rational> {
        Point::from_f64(x, y)
    }

    fn e(a: Point<Rational>, b: Point<Rational>) -> HullEdge<Rational> {
        HullEdge::new(a, b)
    }

    fn build(variant: RankVariant, ys: &[f64]) -> RankHull<Rational> {
        RankHull::from_values(variant, ys.iter().map(|&y| r(y))).unwrap()
    }

    #[test]
    fn four_values() {
        for v in VARIANTS {
            let h = build(v, &[9.0, 1.0, 5.0, 2.0]);
            let hull = h.report_hull();
            assert_eq!(hull.upper, vec![e(p(0.0, 1.0), p(3.0, 9.0))]);
            assert_eq!(
                hull.lower,
                vec![e(p(0.0, 1.0), p(1.0, 2.0)), e(p(1.0, 2.0), p(2.0, 5.0)), e(p(2.0, 5.0), p(3.0, 9.0))]
            );
            // Below the lower edge (1,2)-(2,5), which passes through 3.5 here.
            assert!(!h.point_in_hull(&p(1.5, 3.0)));
            assert!(!naive_point_in_hull(&h.points(), &p(1.5, 3.0)));
            assert!(h.point_in_hull(&p(1.5, 4.0)));
            assert!(!h.point_in_hull(&p(1.5, 9.0)));
            assert!(h.point_in_hull(&p(0.0, 1.0)));
            h.audit(true).unwrap();
        }
    }

    #[test]
    fn insertion_shifts_ranks() {
        for v in VARIANTS {
            let mut h = build(v, &[1.0, 2.0, 5.0, 9.0]);
            h.insert_value(r(3.0)).unwrap();
            assert_eq!(h.report_hull().upper, vec![e(p(0.0, 1.0), p(4.0, 9.0))]);
            assert_eq!(h.report_hull(), static_hull(&h.points()));
            h.audit(true).unwrap();
        }
    }

    #[test]
    fn single_value_round_trip() {
        for v in VARIANTS {
            let mut h = build(v, &[4.0]);
            assert_eq!(h.insert_value(r(4.0)), Err(HullError::DuplicateValue));
            h.delete_value(&r(4.0)).unwrap();
            assert_eq!(h.delete_value(&r(4.0)), Err(HullError::ValueNotFound));
            assert!(h.is_empty());
            assert_eq!(h.report_hull(), HullEdges::empty());
        }
    }

    /// Nodes whose value range and size survived an update must keep their
    /// stored tuples exactly.
    fn assert_off_path_stable(before: &[NodeBridges<Rational>], after: &[NodeBridges<Rational>]) {
        let key = |n: &NodeBridges<Rational>| (n.first.clone(), n.size);
        let mut old: Vec<_> = before.iter().collect();
        old.sort_by(|a, b| a.first.total_cmp(&b.first).then(a.size.cmp(&b.size)));
        for n in after {
            let found = old.binary_search_by(|o| o.first.total_cmp(&n.first).then(o.size.cmp(&n.size)));
            if let Ok(i) = found {
                if old[i].last == n.last {
                    assert_eq!(old[i], n, "tuple of unchanged node {:?} moved", key(n));
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn variants_match_rebuild(ops in proptest::collection::vec((-40i64..40, any::<bool>()), 1..120)) {
            let mut hulls: Vec<_> = VARIANTS.iter().map(|&v| RankHull::<Rational>::new(v)).collect();
            for (y, del) in ops {
                let y = r(y as f64 / 4.0);
                for h in hulls.iter_mut() {
                    let before = h.node_bridges();
                    if del {
                        let _ = h.delete_value(&y);
                    } else {
                        let _ = h.insert_value(y.clone());
                    }
                    assert_off_path_stable(&before, &h.node_bridges());
                }
                let want = static_hull(&hulls[0].points());
                for h in &hulls {
                    prop_assert_eq!(&h.report_hull(), &want);
                }
            }
            for h in &hulls {
                prop_assert_eq!(h.audit(true), Ok(()));
            }
        }
    }
}
