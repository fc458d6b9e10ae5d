//! Points, segments and the geometric predicates every hull decision routes
//! through.
//!
//! The hull structures order points lexicographically by `(x, y)`. This is the
//! order of an infinitesimal shear `x' = x + εy`, which is area preserving, so
//! orientation signs are unchanged and points with equal `x` become ordered.
//! Vertical hull edges therefore behave like very steep edges and never need
//! special cases. The `*_lex` predicates below implement that convention; the
//! plain ones keep the classical x-coordinate semantics.

use std::cmp::Ordering;
use std::fmt;

use crate::error::KernelError;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Point<S> {
    pub x: S,
    pub y: S,
}

impl<S: Scalar> Point<S> {
    pub fn new(x: S, y: S) -> Self {
        Point { x, y }
    }

    /// Lexicographic `(x, y)` order.
    #[inline]
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        self.x.total_cmp(&other.x).then_with(|| self.y.total_cmp(&other.y))
    }

    pub fn from_f64(x: f64, y: f64) -> Self {
        Point::new(S::from_f64(x), S::from_f64(y))
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }

    /// Re-expresses the point in another scalar type through `f64`.
    pub fn convert<T: Scalar>(&self) -> Point<T> {
        Point::new(T::from_f64(self.x.to_f64()), T::from_f64(self.y.to_f64()))
    }
}

impl<S: Scalar> fmt::Display for Point<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x.format_coord(), self.y.format_coord())
    }
}

/// Directed segment between two hull points, `left` before `right`.
///
/// The degenerate edge `(p, p)` stands for the bridge of a single leaf.
#[derive(Clone, Debug, PartialEq)]
pub struct HullEdge<S> {
    pub left: Point<S>,
    pub right: Point<S>,
}

impl<S: Scalar> HullEdge<S> {
    pub fn new(left: Point<S>, right: Point<S>) -> Self {
        HullEdge { left, right }
    }

    pub fn dx(&self) -> S {
        self.right.x.sub_ref(&self.left.x)
    }

    pub fn dy(&self) -> S {
        self.right.y.sub_ref(&self.left.y)
    }

    pub fn is_degenerate(&self) -> bool {
        self.left == self.right
    }
}

impl<S: Scalar> fmt::Display for HullEdge<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.left, self.right)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    LeftTurn,
    Collinear,
    RightTurn,
}

impl Orientation {
    fn from_ordering(o: Ordering) -> Self {
        match o {
            Ordering::Greater => Orientation::LeftTurn,
            Ordering::Equal => Orientation::Collinear,
            Ordering::Less => Orientation::RightTurn,
        }
    }
}

/// Which chain of the hull a computation refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HullSide {
    Upper,
    Lower,
}

impl HullSide {
    pub const BOTH: [HullSide; 2] = [HullSide::Upper, HullSide::Lower];

    #[inline]
    pub fn index(self) -> usize {
        match self {
            HullSide::Upper => 0,
            HullSide::Lower => 1,
        }
    }

    /// Maps an upper-chain ordering onto this side (the lower chain is the
    /// upper chain of the reflection `y -> -y`, with the x-order kept).
    #[inline]
    pub fn orient(self, o: Ordering) -> Ordering {
        match self {
            HullSide::Upper => o,
            HullSide::Lower => o.reverse(),
        }
    }
}

/// Where the supporting-line intersection lies relative to a separator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeparatorSide {
    OnOrLeft,
    Right,
}

/// Rescales dyadic values to integers over a common denominator, provided
/// every result stays below `2^max_bits` in magnitude.
#[inline]
fn common_fixed<S: Scalar, const N: usize>(vals: [&S; N], max_bits: u32) -> Option<[i128; N]> {
    let mut parts = [(0i64, 0u32); N];
    let mut exp = 0;
    for (slot, v) in parts.iter_mut().zip(vals) {
        *slot = v.to_dyadic()?;
        exp = exp.max(slot.1);
    }
    let mut out = [0i128; N];
    for (o, (m, e)) in out.iter_mut().zip(parts) {
        let shift = exp - e;
        if shift >= max_bits {
            if m != 0 {
                return None;
            }
            continue;
        }
        let v = (m as i128) << shift;
        if v.unsigned_abs() >= 1u128 << max_bits {
            return None;
        }
        *o = v;
    }
    Some(out)
}

/// Sign of `a*d - b*c` without forming the difference.
#[inline]
fn det2<S: Scalar>(a: &S, b: &S, c: &S, d: &S) -> Ordering {
    a.mul_ref(d).total_cmp(&b.mul_ref(c))
}

/// Sign of the cross product of `q - p` and `r - p`.
#[inline]
pub fn orient_sign<S: Scalar>(p: &Point<S>, q: &Point<S>, r: &Point<S>) -> Ordering {
    if let Some([px, py, qx, qy, rx, ry]) = common_fixed([&p.x, &p.y, &q.x, &q.y, &r.x, &r.y], 62) {
        return ((qx - px) * (ry - py)).cmp(&((qy - py) * (rx - px)));
    }
    det2(
        &q.x.sub_ref(&p.x),
        &q.y.sub_ref(&p.y),
        &r.x.sub_ref(&p.x),
        &r.y.sub_ref(&p.y),
    )
}

pub fn orientation<S: Scalar>(p: &Point<S>, q: &Point<S>, r: &Point<S>) -> Orientation {
    Orientation::from_ordering(orient_sign(p, q, r))
}

/// Compares the slopes of two segments with positive x-extent.
pub fn slope_compare<S: Scalar>(e1: &HullEdge<S>, e2: &HullEdge<S>) -> Result<Ordering, KernelError> {
    let (dx1, dx2) = (e1.dx(), e2.dx());
    if dx1.sign() != Ordering::Greater || dx2.sign() != Ordering::Greater {
        return Err(KernelError::DegenerateSegment);
    }
    Ok(det2(&e1.dy(), &e2.dy(), &dx1, &dx2))
}

/// Is the x-coordinate of the intersection of the supporting lines of `alpha`
/// and `beta` at most `m`? Requires `slope(alpha) > slope(beta)`.
pub fn intersection_side<S: Scalar>(
    alpha: &HullEdge<S>,
    beta: &HullEdge<S>,
    m: &S,
) -> Result<SeparatorSide, KernelError> {
    match slope_compare(alpha, beta)? {
        Ordering::Equal => return Err(KernelError::ParallelLines),
        Ordering::Less => return Err(KernelError::SlopeOrder),
        Ordering::Greater => {}
    }
    // The steeper line is above the other right of the intersection, so
    // gamma.x <= m iff alpha(m) >= beta(m). Scaled by dx_alpha * dx_beta > 0.
    let (dxa, dya) = (alpha.dx(), alpha.dy());
    let (dxb, dyb) = (beta.dx(), beta.dy());
    let at_alpha = alpha.left.y.mul_ref(&dxa).add_ref(&dya.mul_ref(&m.sub_ref(&alpha.left.x))).mul_ref(&dxb);
    let at_beta = beta.left.y.mul_ref(&dxb).add_ref(&dyb.mul_ref(&m.sub_ref(&beta.left.x))).mul_ref(&dxa);
    Ok(if at_alpha >= at_beta { SeparatorSide::OnOrLeft } else { SeparatorSide::Right })
}

/// Is `q` on or below the supporting line of `e`? Requires positive x-extent.
pub fn point_below_or_on_line<S: Scalar>(q: &Point<S>, e: &HullEdge<S>) -> bool {
    orient_sign(&e.left, &e.right, q) != Ordering::Greater
}

/// Slope comparison of two lexicographically directed segments on `side`.
///
/// Returns `Greater` when `(a1, a2)` is steeper than `(b1, b2)` in the frame
/// of that side. Both segments must satisfy `a1 < a2`, `b1 < b2` (lex).
#[inline]
pub(crate) fn slope_cmp_lex<S: Scalar>(
    side: HullSide,
    a1: &Point<S>,
    a2: &Point<S>,
    b1: &Point<S>,
    b2: &Point<S>,
) -> Ordering {
    // slope(a) ? slope(b)  <=>  dya*dxb ? dyb*dxa
    let fixed = common_fixed([&a1.x, &a1.y, &a2.x, &a2.y, &b1.x, &b1.y, &b2.x, &b2.y], 62);
    if let Some([a1x, a1y, a2x, a2y, b1x, b1y, b2x, b2y]) = fixed {
        return side.orient(((a2y - a1y) * (b2x - b1x)).cmp(&((b2y - b1y) * (a2x - a1x))));
    }
    let o = det2(
        &a2.y.sub_ref(&a1.y),
        &b2.y.sub_ref(&b1.y),
        &a2.x.sub_ref(&a1.x),
        &b2.x.sub_ref(&b1.x),
    );
    side.orient(o)
}

/// Does the intersection of the supporting lines of `alpha` and `beta`
/// precede `sep` in lexicographic order? `alpha` must be strictly steeper
/// than `beta` on `side`, which makes the lines non-parallel.
pub(crate) fn intersection_precedes<S: Scalar>(
    alpha: (&Point<S>, &Point<S>),
    beta: (&Point<S>, &Point<S>),
    sep: &Point<S>,
) -> bool {
    // gamma = a1 + t * da with t = cross(b1 - a1, db) / cross(da, db).
    let (a1, a2) = alpha;
    let (b1, b2) = beta;
    let fixed = common_fixed([&a1.x, &a1.y, &a2.x, &a2.y, &b1.x, &b1.y, &b2.x, &b2.y, &sep.x, &sep.y], 40);
    if let Some([a1x, a1y, a2x, a2y, b1x, b1y, b2x, b2y, sx, sy]) = fixed {
        let (dax, day, dbx, dby) = (a2x - a1x, a2y - a1y, b2x - b1x, b2y - b1y);
        let den = dax * dby - day * dbx;
        let num = (b1x - a1x) * dby - (b1y - a1y) * dbx;
        let sgn = den.signum();
        let x = ((a1x - sx) * den + num * dax) * sgn;
        let y = ((a1y - sy) * den + num * day) * sgn;
        return x.cmp(&0).then(y.cmp(&0)) == Ordering::Less;
    }
    let dax = a2.x.sub_ref(&a1.x);
    let day = a2.y.sub_ref(&a1.y);
    let dbx = b2.x.sub_ref(&b1.x);
    let dby = b2.y.sub_ref(&b1.y);
    let wx = b1.x.sub_ref(&a1.x);
    let wy = b1.y.sub_ref(&a1.y);
    let den = dax.mul_ref(&dby).sub_ref(&day.mul_ref(&dbx));
    let num = wx.mul_ref(&dby).sub_ref(&wy.mul_ref(&dbx));
    debug_assert!(!den.is_zero());
    let flip = den.sign() == Ordering::Less;
    // gamma.x - sep.x = ((a1.x - sep.x) * den + num * dax) / den
    let cmp_scaled = |base: &S, sepc: &S, d: &S| -> Ordering {
        let v = base.sub_ref(sepc).mul_ref(&den).add_ref(&num.mul_ref(d));
        let s = v.sign();
        if flip {
            s.reverse()
        } else {
            s
        }
    };
    cmp_scaled(&a1.x, &sep.x, &dax)
        .then_with(|| cmp_scaled(&a1.y, &sep.y, &day))
        == Ordering::Less
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use proptest::prelude::*;

    type P = Point<Rational>;

    fn p(x: i64, y: i64) -> P {
        Point::from_f64(x as f64, y as f64)
    }

    fn e(a: (i64, i64), b: (i64, i64)) -> HullEdge<Rational> {
        HullEdge::new(p(a.0, a.1), p(b.0, b.1))
    }

    #[test]
    fn orientation_examples() {
        assert_eq!(orientation(&p(0, 0), &p(1, 0), &p(0, 1)), Orientation::LeftTurn);
        assert_eq!(orientation(&p(0, 0), &p(1, 1), &p(2, 2)), Orientation::Collinear);
        assert_eq!(orientation(&p(0, 0), &p(0, 1), &p(1, 0)), Orientation::RightTurn);
    }

    #[test]
    fn slope_compare_examples() {
        assert_eq!(slope_compare(&e((0, 0), (2, 2)), &e((0, 0), (1, 2))), Ok(Ordering::Less));
        assert_eq!(slope_compare(&e((0, 0), (1, 1)), &e((5, 5), (6, 6))), Ok(Ordering::Equal));
        assert_eq!(slope_compare(&e((0, 4), (2, 2)), &e((0, 0), (1, 0))), Ok(Ordering::Less));
        assert_eq!(
            slope_compare(&e((0, 0), (0, 1)), &e((0, 0), (1, 0))),
            Err(KernelError::DegenerateSegment)
        );
    }

    #[test]
    fn intersection_side_examples() {
        // alpha: y = x, beta: y = -2x + 8, gamma.x = 8/3
        let alpha = e((0, 0), (1, 1));
        let beta = e((2, 4), (3, 2));
        assert_eq!(intersection_side(&alpha, &beta, &Rational::from_usize(2)), Ok(SeparatorSide::Right));
        assert_eq!(intersection_side(&alpha, &beta, &Rational::from_usize(3)), Ok(SeparatorSide::OnOrLeft));
        let alpha = e((0, 2), (1, 1));
        let beta = e((1, 1), (2, -1));
        assert_eq!(intersection_side(&alpha, &beta, &Rational::from_usize(1)), Ok(SeparatorSide::OnOrLeft));
        assert_eq!(
            intersection_side(&e((0, 0), (1, 1)), &e((0, 1), (1, 2)), &Rational::from_usize(0)),
            Err(KernelError::ParallelLines)
        );
    }

    #[test]
    fn point_below_or_on_line_examples() {
        let line = e((0, 2), (2, 2));
        assert!(point_below_or_on_line(&p(1, 1), &line));
        assert!(!point_below_or_on_line(&p(1, 3), &line));
        assert!(point_below_or_on_line(&p(1, 2), &line));
    }

    #[test]
    fn intersection_precedes_breaks_ties_by_y() {
        // Lines y = x and y = -x + 2 meet at (1, 1).
        let a = (p(0, 0), p(1, 1));
        let b = (p(1, 1), p(2, 0));
        assert!(!intersection_precedes((&a.0, &a.1), (&b.0, &b.1), &p(1, 1)));
        assert!(intersection_precedes((&a.0, &a.1), (&b.0, &b.1), &p(1, 2)));
        assert!(!intersection_precedes((&a.0, &a.1), (&b.0, &b.1), &p(1, 0)));
        // A vertical alpha meets beta at x = 0.
        let v = (p(0, 0), p(0, 5));
        let b = (p(0, 3), p(4, 1));
        assert!(intersection_precedes((&v.0, &v.1), (&b.0, &b.1), &p(0, 4)));
        assert!(!intersection_precedes((&v.0, &v.1), (&b.0, &b.1), &p(0, 3)));
    }

    fn small() -> impl Strategy<Value = i64> {
        -50i64..50
    }

    fn fpt(q: (i64, i64)) -> Point<f64> {
        Point::from_f64(q.0 as f64, q.1 as f64)
    }

    /// A tiny range, so vertical, collinear and zero-length cases are common.
    fn pair() -> impl Strategy<Value = (i64, i64)> {
        (-3i64..=3, -3i64..=3)
    }

    proptest! {
        // Small integers are exact in f64, so the general path must agree
        // with the integer fast path taken for rationals.
        #![proptest_config(ProptestConfig::with_cases(2000))]
        #[test]
        fn float_path_matches_fast_path(a1 in pair(), a2 in pair(), b1 in pair(), b2 in pair(), m in pair(), lower in any::<bool>()) {
            let side = if lower { HullSide::Lower } else { HullSide::Upper };
            let fast = slope_cmp_lex(side, &p(a1.0, a1.1), &p(a2.0, a2.1), &p(b1.0, b1.1), &p(b2.0, b2.1));
            let slow = slope_cmp_lex(side, &fpt(a1), &fpt(a2), &fpt(b1), &fpt(b2));
            prop_assert_eq!(fast, slow);
            if fast == Ordering::Greater {
                let fast = intersection_precedes((&p(a1.0, a1.1), &p(a2.0, a2.1)), (&p(b1.0, b1.1), &p(b2.0, b2.1)), &p(m.0, m.1));
                let slow = intersection_precedes((&fpt(a1), &fpt(a2)), (&fpt(b1), &fpt(b2)), &fpt(m));
                prop_assert_eq!(fast, slow);
            }
        }

        #[test]
        fn orientation_matches_integer_cross_product(
            a in (small(), small()), b in (small(), small()), c in (small(), small())
        ) {
            let cross = (b.0 - a.0) as i128 * (c.1 - a.1) as i128 - (b.1 - a.1) as i128 * (c.0 - a.0) as i128;
            let expected = Orientation::from_ordering(cross.cmp(&0));
            prop_assert_eq!(orientation(&p(a.0, a.1), &p(b.0, b.1), &p(c.0, c.1)), expected);
            let fp = |q: (i64, i64)| Point::<f64>::from_f64(q.0 as f64, q.1 as f64);
            prop_assert_eq!(orientation(&fp(a), &fp(b), &fp(c)), expected);
        }

        #[test]
        fn slope_compare_agrees_with_orientation(
            o in (small(), small()), dq in 1i64..40, qy in small(), dr in 1i64..40, ry in small()
        ) {
            let q = (o.0 + dq, qy);
            let r = (q.0 + dr, ry);
            let s = slope_compare(&e(o, q), &e(o, r)).unwrap();
            let turn = orientation(&p(o.0, o.1), &p(q.0, q.1), &p(r.0, r.1));
            prop_assert_eq!(s == Ordering::Less, turn == Orientation::LeftTurn);
        }

        #[test]
        fn intersection_side_is_antisymmetric_under_mirroring(
            s1 in (small(), small()), d1 in (1i64..40, small()),
            s2 in (small(), small()), d2 in (1i64..40, small()),
            m in small(),
        ) {
            let (mut a1, mut a2) = (s1, (s1.0 + d1.0, s1.1 + d1.1));
            let (mut b1, mut b2) = (s2, (s2.0 + d2.0, s2.1 + d2.1));
            match slope_compare(&e(a1, a2), &e(b1, b2)).unwrap() {
                Ordering::Equal => return Ok(()),
                Ordering::Less => {
                    std::mem::swap(&mut a1, &mut b1);
                    std::mem::swap(&mut a2, &mut b2);
                }
                Ordering::Greater => {}
            }
            let alpha = e(a1, a2);
            let beta = e(b1, b2);
            let mirror = |s: (i64, i64), t: (i64, i64)| e((-t.0, t.1), (-s.0, s.1));
            let side = intersection_side(&alpha, &beta, &Rational::from_f64(m as f64)).unwrap();
            let flipped = intersection_side(&mirror(b1, b2), &mirror(a1, a2), &Rational::from_f64(-m as f64)).unwrap();
            // gamma.x == m is OnOrLeft on both sides; otherwise they flip.
            let dxa = (a2.0 - a1.0) as i128; let dya = (a2.1 - a1.1) as i128;
            let dxb = (b2.0 - b1.0) as i128; let dyb = (b2.1 - b1.1) as i128;
            let m = m as i128;
            let lhs = (a1.1 as i128 * dxa + dya * (m - a1.0 as i128)) * dxb;
            let rhs = (b1.1 as i128 * dxb + dyb * (m - b1.0 as i128)) * dxa;
            if lhs == rhs {
                prop_assert_eq!(side, SeparatorSide::OnOrLeft);
                prop_assert_eq!(flipped, SeparatorSide::OnOrLeft);
            } else {
                prop_assert_ne!(side, flipped);
            }
        }
    }
}
