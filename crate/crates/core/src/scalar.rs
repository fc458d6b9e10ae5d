//! Coordinate types.
//!
//! Every structure in this crate is generic over a [`Scalar`]. Two families are
//! provided: the exact [`Rational`] (arbitrary precision, error-free predicates)
//! and the hardware floats `f64`/`f32`, whose predicates are evaluated directly
//! and carry no correctness guarantee.

use std::cmp::Ordering;
use std::fmt::{Debug, Display};

use dashu_int::{IBig, UBig};
use dashu_ratio::{RBig, Relaxed};
use num_traits::{Float, Num, Signed};

/// Arbitrary-precision rational used by the exact kernel.
///
/// `Relaxed` keeps numerator and denominator unreduced (apart from powers of
/// two), which suits predicate evaluation: values are only ever compared,
/// never accumulated.
pub type Rational = Relaxed;

/// Which arithmetic a scalar type provides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KernelKind {
    Exact,
    Inexact,
}

impl KernelKind {
    pub fn name(self) -> &'static str {
        match self {
            KernelKind::Exact => "exact",
            KernelKind::Inexact => "inexact",
        }
    }
}

pub trait Scalar: Num + Signed + Clone + PartialOrd + Debug + Display + Send + Sync + 'static {
    const KERNEL: KernelKind;

    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;

    /// Converts a finite double. Exact for [`Rational`].
    fn from_f64(v: f64) -> Self;
    fn to_f64(&self) -> f64;

    fn from_usize(n: usize) -> Self;

    /// Parses a decimal (`-12.375`), integer, or `p/q` literal.
    fn parse_coord(s: &str) -> Option<Self>;

    /// Formats without loss: exact decimal when the value has a finite decimal
    /// expansion, `p/q` otherwise.
    fn format_coord(&self) -> String;

    fn total_cmp(&self, other: &Self) -> Ordering {
        self.partial_cmp(other).expect("coordinates must be totally ordered (NaN?)")
    }

    /// `Some((m, e))` when the value equals `m / 2^e` exactly with `m` a
    /// machine integer. Lets predicates run in integer arithmetic.
    #[inline]
    fn to_dyadic(&self) -> Option<(i64, u32)> {
        None
    }

    /// Comparison with zero. Unlike `Signed::is_positive` on floats, zero of
    /// either sign is `Equal`.
    fn sign(&self) -> Ordering {
        self.total_cmp(&Self::zero())
    }
}

impl Scalar for Rational {
    const KERNEL: KernelKind = KernelKind::Exact;

    #[inline]
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    #[inline]
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    #[inline]
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn from_f64(v: f64) -> Self {
        assert!(v.is_finite(), "cannot convert non-finite value {v} to a rational");
        let (mantissa, exponent, sign) = Float::integer_decode(v);
        let mut num = IBig::from(mantissa);
        if sign < 0 {
            num = -num;
        }
        if exponent >= 0 {
            Relaxed::from_parts(num << exponent as usize, UBig::ONE)
        } else {
            Relaxed::from_parts(num, UBig::ONE << (-exponent) as usize)
        }
    }

    fn to_f64(&self) -> f64 {
        self.to_f64_fast()
    }

    fn from_usize(n: usize) -> Self {
        Relaxed::from_parts(IBig::from(n), UBig::ONE)
    }

    fn parse_coord(s: &str) -> Option<Self> {
        let s = s.trim();
        if s.is_empty() {
            return None;
        }
        if s.contains('/') {
            let (p, q) = s.split_once('/')?;
            let num: IBig = p.trim().parse().ok()?;
            let den: IBig = q.trim().parse().ok()?;
            if den == IBig::ZERO {
                return None;
            }
            let (den_sign, den_mag) = den.into_parts();
            let num = if den_sign == dashu_int::Sign::Negative { -num } else { num };
            return Some(Relaxed::from_parts(num, den_mag));
        }
        if s.contains(['e', 'E']) {
            // Scientific notation is only accepted through an exact double.
            return s.parse::<f64>().ok().filter(|v| v.is_finite()).map(Self::from_f64);
        }
        Relaxed::from_str_decimal(s).ok()
    }

    fn format_coord(&self) -> String {
        format_rational(&self.clone().canonicalize())
    }

    fn total_cmp(&self, other: &Self) -> Ordering {
        if let (Some((m1, e1)), Some((m2, e2))) = (self.to_dyadic(), other.to_dyadic()) {
            let e = e1.max(e2);
            if e - e1.min(e2) < 63 {
                return ((m1 as i128) << (e - e1)).cmp(&((m2 as i128) << (e - e2)));
            }
        }
        self.cmp(other)
    }

    #[inline]
    fn to_dyadic(&self) -> Option<(i64, u32)> {
        let num = i64::try_from(self.numerator()).ok()?;
        let den = u64::try_from(self.denominator()).ok()?;
        den.is_power_of_two().then(|| (num, den.trailing_zeros()))
    }
}

/// Exact decimal rendering when the reduced denominator is of the form
/// `2^a 5^b`, `p/q` otherwise.
fn format_rational(value: &RBig) -> String {
    let num = value.numerator();
    let den = value.denominator();
    if *den == UBig::ONE {
        return num.to_string();
    }
    let two = den.trailing_zeros().unwrap_or(0);
    let mut rest = den >> two;
    let five = UBig::from(5u8);
    let mut fives = 0usize;
    while &rest % &five == UBig::ZERO {
        rest /= &five;
        fives += 1;
    }
    if rest != UBig::ONE {
        return format!("{num}/{den}");
    }
    let digits = two.max(fives);
    let scale = UBig::from(10u8).pow(digits) / den;
    let scaled = num * IBig::from(scale);
    let negative = scaled < IBig::ZERO;
    let mut text = if negative { (-scaled).to_string() } else { scaled.to_string() };
    if text.len() <= digits {
        text = format!("{}{}", "0".repeat(digits + 1 - text.len()), text);
    }
    let (int_part, frac_part) = text.split_at(text.len() - digits);
    let frac_part = frac_part.trim_end_matches('0');
    let sign = if negative { "-" } else { "" };
    if frac_part.is_empty() {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part}")
    }
}

macro_rules! impl_float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            const KERNEL: KernelKind = KernelKind::Inexact;

            #[inline]
            fn add_ref(&self, rhs: &Self) -> Self {
                self + rhs
            }
            #[inline]
            fn sub_ref(&self, rhs: &Self) -> Self {
                self - rhs
            }
            #[inline]
            fn mul_ref(&self, rhs: &Self) -> Self {
                self * rhs
            }

            fn from_f64(v: f64) -> Self {
                v as $t
            }

            fn to_f64(&self) -> f64 {
                *self as f64
            }

            fn from_usize(n: usize) -> Self {
                n as $t
            }

            fn parse_coord(s: &str) -> Option<Self> {
                let s = s.trim();
                if s.contains('/') {
                    let (p, q) = s.split_once('/')?;
                    let p: $t = p.trim().parse().ok()?;
                    let q: $t = q.trim().parse().ok()?;
                    return Some(p / q).filter(|v| v.is_finite());
                }
                s.parse::<$t>().ok().filter(|v| v.is_finite())
            }

            fn format_coord(&self) -> String {
                if self.is_finite() {
                    format_rational(&Rational::from_f64(*self as f64).canonicalize())
                } else {
                    self.to_string()
                }
            }

            // Signed zeros must compare equal, so the IEEE total order is not usable.
            #[inline]
            fn total_cmp(&self, other: &Self) -> Ordering {
                self.partial_cmp(other).expect("coordinates must not be NaN")
            }
        }
    };
}

impl_float_scalar!(f64);
impl_float_scalar!(f32);

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        Rational::parse_coord(s).unwrap()
    }

    #[test]
    fn parses_decimal_fraction_and_integer_literals() {
        assert_eq!(q("1.25"), Rational::from_f64(1.25));
        assert_eq!(q("-0.5"), Rational::from_f64(-0.5));
        assert_eq!(q("7"), Rational::from_usize(7));
        assert_eq!(q("3/4"), Rational::from_f64(0.75));
        assert_eq!(q("3/-4"), Rational::from_f64(-0.75));
        assert_eq!(q("1e-3") , Rational::from_f64(1e-3));
        assert!(Rational::parse_coord("1/0").is_none());
        assert!(Rational::parse_coord("abc").is_none());
        assert!(Rational::parse_coord("").is_none());
    }

    #[test]
    fn formats_dyadic_values_as_exact_decimals() {
        assert_eq!(Rational::from_f64(1.0 / 1048576.0).format_coord(), "0.00000095367431640625");
        assert_eq!(Rational::from_f64(-2.5).format_coord(), "-2.5");
        assert_eq!(Rational::from_f64(0.0).format_coord(), "0");
        assert_eq!(q("1/3").format_coord(), "1/3");
        assert_eq!(q("-1/3").format_coord(), "-1/3");
        assert_eq!(q("0.2").format_coord(), "0.2");
        assert_eq!((-0.0f64).format_coord(), "0");
        assert_eq!(0.1f64.format_coord(), "0.1000000000000000055511151231257827021181583404541015625");
    }

    #[test]
    fn float_conversion_is_exact() {
        for v in [0.1, -1234.5678, 1e-300, 3.0e20, f64::MIN_POSITIVE] {
            let r = Rational::from_f64(v);
            assert_eq!(Scalar::to_f64(&r), v);
            assert_eq!(f64::parse_coord(&r.format_coord()), Some(v));
        }
    }

    #[test]
    fn rational_format_round_trips() {
        for s in ["12.375", "-0.0078125", "5/7", "-11/3", "1000000"] {
            let v = q(s);
            assert_eq!(q(&v.format_coord()), v);
        }
    }
}
