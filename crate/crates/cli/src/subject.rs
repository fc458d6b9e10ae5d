//! Uniform handle over the structures under test.

use dynhull::oracle::{static_hull, HullEdges, NaiveMembership};
use dynhull::{EilHull, HullError, OvlHull, Point, RankHull, RankVariant, Scalar};

use crate::Structure;

/// A dynamic structure driven by points. Rank structures read only `y`
/// and answer queries in the `(rank, value)` plane.
pub trait Subject<S: Scalar> {
    fn insert(&mut self, p: Point<S>) -> Result<(), HullError>;
    fn delete(&mut self, p: &Point<S>) -> Result<(), HullError>;
    fn hull(&self) -> HullEdges<S>;
    fn query(&self, q: &Point<S>) -> bool;
    /// Bridge-search iterations so far.
    fn iterations(&self) -> u64;
}

impl<S: Scalar> Subject<S> for OvlHull<S> {
    fn insert(&mut self, p: Point<S>) -> Result<(), HullError> {
        OvlHull::insert(self, p)
    }
    fn delete(&mut self, p: &Point<S>) -> Result<(), HullError> {
        OvlHull::delete(self, p)
    }
    fn hull(&self) -> HullEdges<S> {
        self.hull_edges()
    }
    fn query(&self, q: &Point<S>) -> bool {
        self.point_in_hull(q)
    }
    fn iterations(&self) -> u64 {
        self.counters().bridge_iterations()
    }
}

impl<S: Scalar> Subject<S> for EilHull<S> {
    fn insert(&mut self, p: Point<S>) -> Result<(), HullError> {
        EilHull::insert(self, p)
    }
    fn delete(&mut self, p: &Point<S>) -> Result<(), HullError> {
        EilHull::delete(self, p)
    }
    fn hull(&self) -> HullEdges<S> {
        self.report_hull()
    }
    fn query(&self, q: &Point<S>) -> bool {
        self.point_in_hull(q)
    }
    fn iterations(&self) -> u64 {
        self.counters().bridge_iterations()
    }
}

impl<S: Scalar> Subject<S> for RankHull<S> {
    fn insert(&mut self, p: Point<S>) -> Result<(), HullError> {
        self.insert_value(p.y)
    }
    fn delete(&mut self, p: &Point<S>) -> Result<(), HullError> {
        self.delete_value(&p.y)
    }
    fn hull(&self) -> HullEdges<S> {
        self.report_hull()
    }
    fn query(&self, q: &Point<S>) -> bool {
        self.point_in_hull(q)
    }
    fn iterations(&self) -> u64 {
        self.counters().bridge_iterations()
    }
}

/// Keeps the point list and recomputes the hull after every change.
#[derive(Debug, Default)]
pub struct Rebuild<S> {
    points: Vec<Point<S>>,
    rank: bool,
}

impl<S: Scalar> Rebuild<S> {
    pub fn new(rank: bool) -> Self {
        Rebuild { points: Vec::new(), rank }
    }

    fn position(&self, p: &Point<S>) -> Option<usize> {
        if self.rank {
            self.points.iter().position(|o| o.y == p.y)
        } else {
            self.points.iter().position(|o| o == p)
        }
    }

    /// Points the hull is taken over.
    pub fn embedded(&self) -> Vec<Point<S>> {
        if !self.rank {
            return self.points.clone();
        }
        let mut ys: Vec<S> = self.points.iter().map(|p| p.y.clone()).collect();
        ys.sort_by(|a, b| a.total_cmp(b));
        ys.into_iter().enumerate().map(|(i, y)| Point::new(S::from_usize(i), y)).collect()
    }

    pub fn contains(&self, p: &Point<S>) -> bool {
        self.position(p).is_some()
    }
}

impl<S: Scalar> Subject<S> for Rebuild<S> {
    fn insert(&mut self, p: Point<S>) -> Result<(), HullError> {
        if self.contains(&p) {
            return Err(if self.rank { HullError::DuplicateValue } else { HullError::DuplicatePoint });
        }
        self.points.push(p);
        Ok(())
    }
    fn delete(&mut self, p: &Point<S>) -> Result<(), HullError> {
        match self.position(p) {
            Some(i) => {
                self.points.swap_remove(i);
                Ok(())
            }
            None => Err(if self.rank { HullError::ValueNotFound } else { HullError::PointNotFound }),
        }
    }
    fn hull(&self) -> HullEdges<S> {
        static_hull(&self.embedded())
    }
    fn query(&self, q: &Point<S>) -> bool {
        NaiveMembership::new(&self.embedded()).contains(q)
    }
    fn iterations(&self) -> u64 {
        0
    }
}

/// A fresh, empty instance of a dynamic structure.
pub fn dynamic<S: Scalar + 'static>(structure: Structure) -> Box<dyn Subject<S>> {
    match structure {
        Structure::Ovl => Box::new(OvlHull::<S>::new()),
        Structure::Eilice => Box::new(EilHull::<S>::new()),
        Structure::RankOvl => Box::new(RankHull::<S>::new(RankVariant::CQueue)),
        Structure::RankEilice => Box::new(RankHull::<S>::new(RankVariant::Navigation)),
        Structure::StaticOracle => Box::new(Rebuild::<S>::new(false)),
    }
}
