//! Outward-rounded interval arithmetic over f64.
//!
//! Every operation returns an interval guaranteed to contain the exact
//! real-number result for all points of the inputs. Endpoints may be
//! infinite; NaN never appears in a valid interval. Operations that are
//! exactly representable stay exact (no spurious ulp growth), so dyadic
//! rational data survives long computations untouched.

mod elementary;
mod round;

pub use elementary::{
    atan_bounds_rational, log1p_bounds_rational, E, LN2, PI, PI_2, PI_4, SQRT2, TWO_PI,
};
#[allow(unused_imports)]
pub(crate) use round::{next_down, next_up};

use crate::error::{Error, Result};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeTuple, Serializer};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub const ZERO: Interval = Interval { lo: 0.0, hi: 0.0 };
    pub const ONE: Interval = Interval { lo: 1.0, hi: 1.0 };
    pub const ENTIRE: Interval = Interval {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
    };

    /// Panics if the endpoints are misordered or NaN: constructing an invalid
    /// interval is a programming error, not a data error.
    #[track_caller]
    pub fn new(lo: f64, hi: f64) -> Interval {
        assert!(
            lo <= hi && !lo.is_nan() && !hi.is_nan() && lo < f64::INFINITY && hi > f64::NEG_INFINITY,
            "invalid interval endpoints [{lo}, {hi}]"
        );
        Interval { lo, hi }
    }

    pub fn checked(lo: f64, hi: f64) -> Result<Interval> {
        if lo <= hi && !lo.is_nan() && !hi.is_nan() && lo < f64::INFINITY && hi > f64::NEG_INFINITY
        {
            Ok(Interval { lo, hi })
        } else {
            Err(Error::domain(format!("invalid endpoints [{lo}, {hi}]")))
        }
    }

    #[track_caller]
    pub fn point(x: f64) -> Interval {
        assert!(!x.is_nan() && x.is_finite(), "invalid point {x}");
        Interval { lo: x, hi: x }
    }

    /// Exact n/d when the quotient is representable, else a one-ulp bracket.
    #[track_caller]
    pub fn from_ratio(num: i64, den: i64) -> Interval {
        assert!(den != 0, "zero denominator");
        let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
        let a = num as f64; // i64 -> f64 may round for |num| > 2^53
        let b = den as f64;
        debug_assert!(a as i64 == num && b as i64 == den, "ratio endpoints too large");
        Interval {
            lo: round::div_lo(a, b),
            hi: round::div_hi(a, b),
        }
    }

    pub fn with_radius(center: f64, radius: f64) -> Interval {
        assert!(radius >= 0.0 && !center.is_nan());
        Interval {
            lo: round::sub_lo(center, radius),
            hi: round::add_hi(center, radius),
        }
    }

    #[inline]
    pub fn lo(self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn hi(self) -> f64 {
        self.hi
    }

    #[inline]
    pub fn width(self) -> f64 {
        round::sub_hi(self.hi, self.lo)
    }

    /// A finite point inside the interval, suitable for bisection.
    pub fn mid(self) -> f64 {
        let lo = self.lo.max(f64::MIN / 2.0);
        let hi = self.hi.min(f64::MAX / 2.0);
        let m = 0.5 * (lo + hi);
        if m.is_finite() {
            m.clamp(self.lo, self.hi)
        } else {
            0.0f64.clamp(self.lo, self.hi)
        }
    }

    /// Upper bound on the distance from `mid` to either endpoint.
    pub fn rad(self) -> f64 {
        let m = self.mid();
        round::sub_hi(self.hi, m).max(round::sub_hi(m, self.lo))
    }

    /// sup |x| over the interval.
    pub fn mag(self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    /// inf |x| over the interval.
    pub fn mig(self) -> f64 {
        if self.contains_zero() {
            0.0
        } else {
            self.lo.abs().min(self.hi.abs())
        }
    }

    #[inline]
    pub fn is_point(self) -> bool {
        self.lo == self.hi
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    #[inline]
    pub fn contains(self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    #[inline]
    pub fn contains_zero(self) -> bool {
        self.lo <= 0.0 && 0.0 <= self.hi
    }

    #[inline]
    pub fn encloses(self, other: Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn hull(self, other: Interval) -> Interval {
        Interval {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    pub fn intersect(self, other: Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        if lo <= hi {
            Some(Interval { lo, hi })
        } else {
            None
        }
    }

    /// Intersection of two enclosures of the same quantity. Panics if they
    /// are disjoint, because that proves at least one of them wrong.
    #[track_caller]
    pub fn meet(self, other: Interval) -> Interval {
        self.intersect(other)
            .expect("disjoint enclosures of the same value")
    }

    pub fn split(self) -> (Interval, Interval) {
        let m = self.mid();
        (
            Interval { lo: self.lo, hi: m },
            Interval { lo: m, hi: self.hi },
        )
    }

    /// Widen both endpoints outward by one ulp.
    pub fn widen_ulp(self) -> Interval {
        Interval {
            lo: next_down(self.lo),
            hi: next_up(self.hi),
        }
    }

    pub fn abs_i(self) -> Interval {
        if self.lo >= 0.0 {
            self
        } else if self.hi <= 0.0 {
            -self
        } else {
            Interval {
                lo: 0.0,
                hi: self.mag(),
            }
        }
    }

    pub fn min_i(self, other: Interval) -> Interval {
        Interval {
            lo: self.lo.min(other.lo),
            hi: self.hi.min(other.hi),
        }
    }

    pub fn max_i(self, other: Interval) -> Interval {
        Interval {
            lo: self.lo.max(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    /// Tight square: never dips below zero even when the input straddles it.
    pub fn sqr(self) -> Interval {
        let a = self.abs_i();
        Interval {
            lo: round::mul_lo(a.lo, a.lo),
            hi: round::mul_hi(a.hi, a.hi),
        }
    }

    pub fn sqrt(self) -> Result<Interval> {
        if self.lo < 0.0 {
            return Err(Error::domain(format!("sqrt of {self}")));
        }
        Ok(Interval {
            lo: round::sqrt_lo(self.lo),
            hi: round::sqrt_hi(self.hi),
        })
    }

    pub fn recip(self) -> Result<Interval> {
        Interval::ONE.checked_div(self)
    }

    pub fn checked_div(self, rhs: Interval) -> Result<Interval> {
        if rhs.contains_zero() {
            return Err(Error::domain(format!("division by {rhs} containing zero")));
        }
        let candidates = [
            round::div_lo(self.lo, rhs.lo),
            round::div_lo(self.lo, rhs.hi),
            round::div_lo(self.hi, rhs.lo),
            round::div_lo(self.hi, rhs.hi),
        ];
        let lo = candidates.iter().cloned().fold(f64::INFINITY, f64::min);
        let candidates = [
            round::div_hi(self.lo, rhs.lo),
            round::div_hi(self.lo, rhs.hi),
            round::div_hi(self.hi, rhs.lo),
            round::div_hi(self.hi, rhs.hi),
        ];
        let hi = candidates.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        Ok(Interval { lo, hi })
    }

    /// Integer power, tight for all sign configurations.
    pub fn powi(self, n: i32) -> Result<Interval> {
        if n == 0 {
            return Ok(Interval::ONE);
        }
        if n < 0 {
            return self.powi(-n)?.recip();
        }
        let n = n as u32;
        if n % 2 == 1 {
            Ok(Interval {
                lo: pow_signed_lo(self.lo, n),
                hi: pow_signed_hi(self.hi, n),
            })
        } else {
            let a = self.abs_i();
            Ok(Interval {
                lo: pow_signed_lo(a.lo, n),
                hi: pow_signed_hi(a.hi, n),
            })
        }
    }

    pub fn exp(self) -> Interval {
        elementary::exp_iv(self)
    }

    pub fn ln(self) -> Result<Interval> {
        elementary::ln_iv(self)
    }

    pub fn log1p(self) -> Result<Interval> {
        elementary::log1p_iv(self)
    }

    pub fn atan(self) -> Interval {
        elementary::atan_iv(self)
    }

    /// atan2 with y/x restricted to single-quadrant-safe configurations is
    /// handled in the complex module; here x must not contain zero.
    pub fn sin(self) -> Interval {
        elementary::sin_iv(self)
    }

    pub fn cos(self) -> Interval {
        elementary::cos_iv(self)
    }

    pub fn asin(self) -> Result<Interval> {
        elementary::asin_iv(self)
    }

    pub fn acos(self) -> Result<Interval> {
        elementary::acos_iv(self)
    }

    /// x^y = exp(y ln x) for x strictly positive.
    pub fn pow(self, y: Interval) -> Result<Interval> {
        if self.lo <= 0.0 {
            return Err(Error::domain(format!("pow base {self} must be positive")));
        }
        Ok((y * self.ln()?).exp())
    }
}

fn pow_signed_lo(x: f64, n: u32) -> f64 {
    if x < 0.0 {
        let m = pow_abs_hi(-x, n);
        if n % 2 == 1 {
            -m
        } else {
            unreachable!("even powers route through abs")
        }
    } else {
        pow_abs_lo(x, n)
    }
}

fn pow_signed_hi(x: f64, n: u32) -> f64 {
    if x < 0.0 {
        let m = pow_abs_lo(-x, n);
        if n % 2 == 1 {
            -m
        } else {
            unreachable!("even powers route through abs")
        }
    } else {
        pow_abs_hi(x, n)
    }
}

fn pow_abs_lo(x: f64, n: u32) -> f64 {
    debug_assert!(x >= 0.0);
    let mut acc = x;
    for _ in 1..n {
        acc = round::mul_lo(acc, x);
    }
    acc
}

fn pow_abs_hi(x: f64, n: u32) -> f64 {
    debug_assert!(x >= 0.0);
    let mut acc = x;
    for _ in 1..n {
        acc = round::mul_hi(acc, x);
    }
    acc
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, rhs: Interval) -> Interval {
        Interval {
            lo: round::add_lo(self.lo, rhs.lo),
            hi: round::add_hi(self.hi, rhs.hi),
        }
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, rhs: Interval) -> Interval {
        Interval {
            lo: round::sub_lo(self.lo, rhs.hi),
            hi: round::sub_hi(self.hi, rhs.lo),
        }
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, rhs: Interval) -> Interval {
        let lo = [
            round::mul_lo(self.lo, rhs.lo),
            round::mul_lo(self.lo, rhs.hi),
            round::mul_lo(self.hi, rhs.lo),
            round::mul_lo(self.hi, rhs.hi),
        ]
        .into_iter()
        .fold(f64::INFINITY, f64::min);
        let hi = [
            round::mul_hi(self.lo, rhs.lo),
            round::mul_hi(self.lo, rhs.hi),
            round::mul_hi(self.hi, rhs.lo),
            round::mul_hi(self.hi, rhs.hi),
        ]
        .into_iter()
        .fold(f64::NEG_INFINITY, f64::max);
        Interval { lo, hi }
    }
}

/// Total division operator for divisors structurally bounded away from zero;
/// panics otherwise. Use `checked_div` when the divisor might straddle zero.
impl Div for Interval {
    type Output = Interval;
    #[track_caller]
    fn div(self, rhs: Interval) -> Interval {
        match self.checked_div(rhs) {
            Ok(v) => v,
            Err(e) => panic!("{e}"),
        }
    }
}

macro_rules! mixed_ops {
    ($($t:ty),*) => {$(
        impl Add<$t> for Interval {
            type Output = Interval;
            fn add(self, rhs: $t) -> Interval { self + Interval::point(rhs as f64) }
        }
        impl Add<Interval> for $t {
            type Output = Interval;
            fn add(self, rhs: Interval) -> Interval { Interval::point(self as f64) + rhs }
        }
        impl Sub<$t> for Interval {
            type Output = Interval;
            fn sub(self, rhs: $t) -> Interval { self - Interval::point(rhs as f64) }
        }
        impl Sub<Interval> for $t {
            type Output = Interval;
            fn sub(self, rhs: Interval) -> Interval { Interval::point(self as f64) - rhs }
        }
        impl Mul<$t> for Interval {
            type Output = Interval;
            fn mul(self, rhs: $t) -> Interval { self * Interval::point(rhs as f64) }
        }
        impl Mul<Interval> for $t {
            type Output = Interval;
            fn mul(self, rhs: Interval) -> Interval { Interval::point(self as f64) * rhs }
        }
        impl Div<$t> for Interval {
            type Output = Interval;
            #[track_caller]
            fn div(self, rhs: $t) -> Interval { self / Interval::point(rhs as f64) }
        }
        impl Div<Interval> for $t {
            type Output = Interval;
            #[track_caller]
            fn div(self, rhs: Interval) -> Interval { Interval::point(self as f64) / rhs }
        }
    )*};
}

mixed_ops!(f64, i32);

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            write!(f, "[{}]", self.lo)
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}, {:?}]", self.lo, self.hi)
    }
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut t = serializer.serialize_tuple(2)?;
        t.serialize_element(&self.lo)?;
        t.serialize_element(&self.hi)?;
        t.end()
    }
}

impl<'de> Deserialize<'de> for Interval {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct IvVisitor;
        impl<'de> Visitor<'de> for IvVisitor {
            type Value = Interval;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a two-element array [lo, hi]")
            }
            fn visit_seq<A: SeqAccess<'de>>(
                self,
                mut seq: A,
            ) -> std::result::Result<Interval, A::Error> {
                let lo: f64 = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::invalid_length(0, &self))?;
                let hi: f64 = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::invalid_length(1, &self))?;
                Interval::checked(lo, hi).map_err(de::Error::custom)
            }
        }
        deserializer.deserialize_tuple(2, IvVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dyadic_arithmetic_is_exact() {
        let c = Interval::from_ratio(2694, 2048);
        assert!(c.is_point());
        assert_eq!(c.lo(), 1.31542968750);
        let r = Interval::from_ratio(129, 128);
        assert!(r.is_point());
        let s = c + r * Interval::from_ratio(1, 2);
        assert!(s.is_point());

        let x = Interval::from_ratio(835, 512);
        assert!((x - x).contains(0.0));
        assert!(x.sqr().is_point() || x.sqr().width() <= f64::EPSILON * 4.0);
    }

    #[test]
    fn from_ratio_brackets_non_dyadic() {
        let t = Interval::from_ratio(1, 3);
        assert!(t.lo() < t.hi());
        assert!(t.width() <= f64::EPSILON);
        assert!(t.contains(1.0 / 3.0) || (t.lo()..=t.hi()).contains(&(1.0 / 3.0)));
    }

    #[test]
    fn mul_sign_cases() {
        let a = Interval::new(-2.0, 3.0);
        let b = Interval::new(-5.0, 1.0);
        let p = a * b;
        assert_eq!(p.lo(), -15.0);
        assert_eq!(p.hi(), 10.0);
        assert_eq!((a * Interval::ZERO), Interval::ZERO);
    }

    #[test]
    fn div_rejects_zero_straddle() {
        let a = Interval::new(1.0, 2.0);
        assert!(a.checked_div(Interval::new(-1.0, 1.0)).is_err());
        let q = a.checked_div(Interval::new(2.0, 4.0)).unwrap();
        assert_eq!(q.lo(), 0.25);
        assert_eq!(q.hi(), 1.0);
    }

    #[test]
    fn powi_parity() {
        let x = Interval::new(-3.0, 2.0);
        let sq = x.powi(2).unwrap();
        assert_eq!(sq.lo(), 0.0);
        assert_eq!(sq.hi(), 9.0);
        let cb = x.powi(3).unwrap();
        assert_eq!(cb.lo(), -27.0);
        assert_eq!(cb.hi(), 8.0);
        let inv = Interval::new(2.0, 4.0).powi(-2).unwrap();
        assert_eq!(inv.lo(), 0.0625);
        assert_eq!(inv.hi(), 0.25);
    }

    #[test]
    fn hull_intersect_contains() {
        let a = Interval::new(0.0, 2.0);
        let b = Interval::new(1.0, 3.0);
        assert_eq!(a.hull(b), Interval::new(0.0, 3.0));
        assert_eq!(a.intersect(b), Some(Interval::new(1.0, 2.0)));
        assert!(a.encloses(Interval::new(0.5, 1.5)));
        assert!(Interval::new(4.0, 5.0).intersect(a).is_none());
    }

    #[test]
    fn serde_round_trip_is_exact() {
        let x = Interval::new(0.1, 0.30000000000000004);
        let s = serde_json::to_string(&x).unwrap();
        let y: Interval = serde_json::from_str(&s).unwrap();
        assert_eq!(x, y);
        assert!(serde_json::from_str::<Interval>("[2.0,1.0]").is_err());
    }

    #[test]
    fn infinite_endpoints_flow_through() {
        let x = Interval::new(1.0, f64::INFINITY);
        let y = x + Interval::point(1.0);
        assert_eq!(y.hi(), f64::INFINITY);
        assert_eq!(y.lo(), 2.0);
        let z = Interval::new(f64::NEG_INFINITY, -1.0) * Interval::point(2.0);
        assert_eq!(z.lo(), f64::NEG_INFINITY);
        assert_eq!(z.hi(), -2.0);
    }
}
