//! An independent hull oracle by gift wrapping, used to cross-check the
//! monotone-chain oracle and both dynamic structures.

use std::cmp::Ordering;

use dynhull::kernel::orient_sign;
use dynhull::oracle::static_hull;
use dynhull::{EilHull, OvlHull, Point, Rational, Scalar};
use proptest::prelude::*;

type P = Point<Rational>;

/// Hull vertices counter-clockwise from the lexicographically smallest
/// point, collinear boundary points excluded.
fn gift_wrap(points: &[P]) -> Vec<P> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.lex_cmp(b));
    pts.dedup();
    if pts.len() < 2 {
        return Vec::new();
    }
    let start = pts[0].clone();
    let mut hull = vec![start.clone()];
    let mut cur = start.clone();
    loop {
        let mut next = if pts[0] == cur { pts[1].clone() } else { pts[0].clone() };
        for q in &pts {
            if *q == cur {
                continue;
            }
            // Keep the candidate every other point is left of; among
            // collinear candidates, the farthest.
            match orient_sign(&cur, &next, q) {
                Ordering::Less => next = q.clone(),
                Ordering::Equal if dist2(&cur, q) > dist2(&cur, &next) => next = q.clone(),
                _ => {}
            }
        }
        if next == start {
            break;
        }
        hull.push(next.clone());
        cur = next;
    }
    hull
}

fn dist2(a: &P, b: &P) -> Rational {
    let dx = b.x.sub_ref(&a.x);
    let dy = b.y.sub_ref(&a.y);
    dx.mul_ref(&dx).add_ref(&dy.mul_ref(&dy))
}

fn p(x: i64, y: i64) -> P {
    Point::from_f64(x as f64, y as f64)
}

#[test]
fn square_and_segment() {
    let sq = [p(0, 0), p(2, 2), p(0, 2), p(2, 0), p(1, 1), p(1, 0)];
    assert_eq!(gift_wrap(&sq), vec![p(0, 0), p(2, 0), p(2, 2), p(0, 2)]);
    assert_eq!(static_hull(&sq).vertices(), gift_wrap(&sq));
    let seg = [p(0, 0), p(1, 1), p(3, 3)];
    assert_eq!(gift_wrap(&seg), vec![p(0, 0), p(3, 3)]);
    assert_eq!(static_hull(&seg).vertices(), gift_wrap(&seg));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]
    #[test]
    fn all_hulls_agree(raw in proptest::collection::vec((-7i64..=7, -7i64..=7), 1..50)) {
        let pts: Vec<P> = raw.iter().map(|&(x, y)| p(x, y)).collect();
        let want = gift_wrap(&pts);
        prop_assert_eq!(static_hull(&pts).vertices(), want.clone());
        let mut ovl = OvlHull::new();
        let mut eil = EilHull::new();
        for q in &pts {
            let _ = ovl.insert(q.clone());
            let _ = eil.insert(q.clone());
        }
        prop_assert_eq!(ovl.hull_edges().vertices(), want.clone());
        prop_assert_eq!(eil.report_hull().vertices(), want);
    }
}
