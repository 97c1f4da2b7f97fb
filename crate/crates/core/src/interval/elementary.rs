//! Elementary transcendental functions with rigorous enclosures.
//!
//! All functions reduce the argument to a small range and sum a truncated
//! series whose tail is bounded explicitly, in interval arithmetic
//! throughout. Nothing here trusts libm beyond the correctly rounded
//! +,-,*,/,sqrt used by the rounding kernels; the constants pi, ln 2, e are
//! bootstrapped from rational series.
//!
//! atan and log1p are additionally intersected with published two-sided
//! rational bounds (Alirezaei's atan bounds, the Pade-type log bounds),
//! which serves as a built-in cross-check: a disjoint intersection would
//! panic, exposing a defect in one of the two derivations.

use super::round;
use super::Interval;
use crate::error::{Error, Result};
use std::sync::LazyLock;

pub static LN2: LazyLock<Interval> = LazyLock::new(|| {
    // ln 2 = 2 atanh(1/3)
    let u = Interval::from_ratio(1, 3);
    atanh_series(u, 32) * 2.0
});

pub static PI: LazyLock<Interval> = LazyLock::new(|| {
    // Machin: pi = 16 atan(1/5) - 4 atan(1/239)
    let a = atan_series(Interval::from_ratio(1, 5), 26);
    let b = atan_series(Interval::from_ratio(1, 239), 12);
    a * 16.0 - b * 4.0
});

pub static PI_2: LazyLock<Interval> = LazyLock::new(|| *PI * 0.5);
pub static PI_4: LazyLock<Interval> = LazyLock::new(|| *PI * 0.25);
pub static TWO_PI: LazyLock<Interval> = LazyLock::new(|| *PI * 2.0);
pub static SQRT2: LazyLock<Interval> =
    LazyLock::new(|| Interval::point(2.0).sqrt().expect("sqrt 2"));
pub static E: LazyLock<Interval> = LazyLock::new(|| exp_iv(Interval::ONE));

/// atanh(u) for |u| well below 1: u * (1 + t/3 + t^2/5 + ...) with t = u^2,
/// evaluated by Horner so rounding from late terms is damped by powers of t.
fn atanh_series(u: Interval, n: u32) -> Interval {
    let m = u.mag();
    debug_assert!(m < 0.5 && n >= 2);
    let t = u.sqr();
    let mut acc = Interval::from_ratio(1, (2 * n - 1) as i64);
    for j in (0..n - 1).rev() {
        acc = Interval::from_ratio(1, (2 * j + 1) as i64) + t * acc;
    }
    // Tail: sum_{j>=n} m^(2j+1)/(2j+1) <= m^(2n+1) / ((2n+1)(1-m^2)).
    let mp = Interval::point(m);
    let tail = mp.powi(2 * n as i32 + 1).expect("powi")
        / ((2 * n + 1) as f64 * (Interval::ONE - mp.sqr()));
    let r = tail.hi();
    u * acc + Interval::new(-r, r)
}

/// atan(u) for |u| well below 1: u * (1 - t/3 + t^2/5 - ...), Horner form.
fn atan_series(u: Interval, n: u32) -> Interval {
    let m = u.mag();
    debug_assert!(m < 0.45 && n >= 2);
    let t = u.sqr();
    let mut acc = Interval::from_ratio(1, (2 * n - 1) as i64);
    for j in (0..n - 1).rev() {
        acc = Interval::from_ratio(1, (2 * j + 1) as i64) - t * acc;
    }
    // Alternating series: the error is at most the first omitted term.
    let mp = Interval::point(m);
    let tail = mp.powi(2 * n as i32 + 1).expect("powi") / (2 * n + 1) as f64;
    let r = tail.hi();
    u * acc + Interval::new(-r, r)
}

/// Exact power of two as f64 (subnormals included); zero below 2^-1074.
fn pow2(k: i32) -> f64 {
    if (-1022..1024).contains(&k) {
        f64::from_bits(((k + 1023) as u64) << 52)
    } else if (-1074..-1022).contains(&k) {
        f64::from_bits(1u64 << (k + 1074) as u64)
    } else if k <= -1074 {
        0.0
    } else {
        f64::INFINITY
    }
}

fn exp_point(x: f64) -> Interval {
    if x == 0.0 {
        return Interval::ONE;
    }
    if x >= 710.0 {
        return Interval::new(f64::MAX, f64::INFINITY);
    }
    if x <= -746.0 {
        return Interval::new(0.0, round::TINY);
    }
    let k = (x * std::f64::consts::LOG2_E).round();
    let r = Interval::point(x) - *LN2 * k;
    debug_assert!(r.mag() < 0.3467);
    // Horner for sum_{j=0}^{13} r^j / j!
    let mut acc = Interval::ONE;
    for j in (1..=13u32).rev() {
        acc = Interval::ONE + r * acc / j as f64;
    }
    let m = Interval::point(r.mag());
    let tail = m.powi(14).expect("powi") / 87178291200.0 / (Interval::ONE - m / 15.0);
    let t = tail.hi();
    let series = acc + Interval::new(-t, t);
    // Scale by 2^k, possibly in two exact steps to dodge overflow/underflow
    // of the scale factor itself.
    let k = k as i32;
    if k >= -1000 && k <= 1000 {
        series * Interval::point(pow2(k))
    } else if k > 0 {
        series * Interval::point(pow2(1000)) * Interval::point(pow2(k - 1000))
    } else {
        let s = series * Interval::point(pow2(-1000)) * Interval::point(pow2((k + 1000).max(-80)));
        // Clamp: values this small may have underflowed, keep endpoints sane.
        Interval::new(s.lo().max(0.0), s.hi().max(round::TINY))
    }
}

pub(super) fn exp_iv(x: Interval) -> Interval {
    if x.is_point() {
        return exp_point(x.lo());
    }
    let lo = if x.lo() == f64::NEG_INFINITY {
        0.0
    } else {
        exp_point(x.lo()).lo()
    };
    let hi = if x.hi() == f64::INFINITY {
        f64::INFINITY
    } else {
        exp_point(x.hi()).hi()
    };
    Interval::new(lo, hi)
}

/// (mantissa, exponent) with mantissa in [2^-1/2, 2^1/2) and x = m * 2^e.
fn frexp_balanced(x: f64) -> (f64, i32) {
    debug_assert!(x > 0.0 && x.is_finite());
    let (x, bias) = if x < f64::MIN_POSITIVE {
        (x * pow2(108), -108)
    } else {
        (x, 0)
    };
    let bits = x.to_bits();
    let raw_exp = ((bits >> 52) & 0x7ff) as i32;
    let mut e = raw_exp - 1023 + bias;
    let mut m = f64::from_bits((bits & 0x000f_ffff_ffff_ffff) | (1023u64 << 52));
    if m > std::f64::consts::SQRT_2 {
        m *= 0.5;
        e += 1;
    }
    (m, e)
}

fn ln_point(x: f64) -> Result<Interval> {
    if x <= 0.0 {
        return Err(Error::domain(format!("log of {x}")));
    }
    if x == 1.0 {
        return Ok(Interval::ZERO);
    }
    if x == f64::INFINITY {
        return Ok(Interval::new(f64::MAX, f64::INFINITY));
    }
    let (m, e) = frexp_balanced(x);
    // ln m = 2 atanh((m-1)/(m+1)); |u| <= sqrt2-1 / sqrt2+1 ~ 0.1716
    let mp = Interval::point(m);
    let u = (mp - Interval::ONE) / (mp + Interval::ONE);
    let s = atanh_series(u, 12) * 2.0;
    Ok(s + *LN2 * e as f64)
}

pub(super) fn ln_iv(x: Interval) -> Result<Interval> {
    if x.lo() <= 0.0 {
        return Err(Error::domain(format!("log of {x}")));
    }
    if x.is_point() {
        return ln_point(x.lo());
    }
    Ok(Interval::new(
        ln_point(x.lo())?.lo(),
        ln_point(x.hi())?.hi(),
    ))
}

/// Two-sided rational bounds for ln(1+x) (Pade-type): for x >= 0,
/// 2x/(2+x) <= ln(1+x) <= x(2+x)/(2+2x), with the roles swapped on
/// (-1, 0]. Exposed for use as an independent oracle.
pub fn log1p_bounds_rational(x: Interval) -> Result<Interval> {
    if x.lo() <= -1.0 {
        return Err(Error::domain(format!("log1p of {x}")));
    }
    fn point_bounds(x: f64) -> Interval {
        let xi = Interval::point(x);
        let a = xi * 2.0 / (xi + 2.0);
        let b = xi * (xi + 2.0) / ((xi + 1.0) * 2.0);
        if x >= 0.0 {
            Interval::new(a.lo(), b.hi())
        } else {
            Interval::new(b.lo(), a.hi())
        }
    }
    // Both bounding curves are increasing, so endpoint evaluation encloses.
    let lo = if x.lo() == f64::NEG_INFINITY {
        f64::NEG_INFINITY
    } else {
        point_bounds(x.lo()).lo()
    };
    let hi = if x.hi() == f64::INFINITY {
        f64::INFINITY
    } else {
        point_bounds(x.hi()).hi()
    };
    Ok(Interval::new(lo, hi))
}

fn log1p_point(x: f64) -> Result<Interval> {
    if x <= -1.0 {
        return Err(Error::domain(format!("log1p of {x}")));
    }
    if x == 0.0 {
        return Ok(Interval::ZERO);
    }
    let series = if x.abs() <= 0.5 {
        let xi = Interval::point(x);
        let u = xi / (xi + 2.0);
        atanh_series(u, 14) * 2.0
    } else {
        ln_iv(Interval::point(x) + Interval::ONE)?
    };
    Ok(series.meet(log1p_bounds_rational(Interval::point(x))?))
}

pub(super) fn log1p_iv(x: Interval) -> Result<Interval> {
    if x.lo() <= -1.0 {
        return Err(Error::domain(format!("log1p of {x}")));
    }
    if x.is_point() {
        return log1p_point(x.lo());
    }
    let hi = if x.hi() == f64::INFINITY {
        f64::INFINITY
    } else {
        log1p_point(x.hi())?.hi()
    };
    Ok(Interval::new(log1p_point(x.lo())?.lo(), hi))
}

/// Two-sided rational bounds for atan on [0, inf) (Alirezaei):
///   8x / (3 + sqrt(25 + (80/3) x^2))     <= atan x
///   8x / (3 + sqrt(25 + (256/pi^2) x^2)) >= atan x
/// Mirrored for negative x. Exposed for use as an independent oracle.
pub fn atan_bounds_rational(x: Interval) -> Interval {
    fn point_bounds(x: f64) -> Interval {
        if x == 0.0 {
            return Interval::ZERO;
        }
        if x < 0.0 {
            return -point_bounds(-x);
        }
        if x == f64::INFINITY {
            return Interval::new((*PI_2).lo() - 1e-9, (*PI_2).hi());
        }
        let xi = Interval::point(x);
        let x2 = xi.sqr();
        let lo_den = (x2 * Interval::from_ratio(80, 3) + 25.0)
            .sqrt()
            .expect("sqrt")
            + 3.0;
        let lo = (xi * 8.0 / lo_den).lo();
        let c = 256.0 / (*PI).sqr();
        let hi_den = (x2 * c + 25.0).sqrt().expect("sqrt") + 3.0;
        let hi = (xi * 8.0 / hi_den).hi();
        Interval::new(lo, hi)
    }
    // Both bounding curves increase with x.
    Interval::new(point_bounds(x.lo()).lo(), point_bounds(x.hi()).hi())
}

/// atan on a nonnegative interval of magnitude at most ~1, by argument
/// halving and the alternating series.
fn atan_small(v: Interval) -> Interval {
    debug_assert!(v.lo() >= 0.0 && v.hi() <= 1.0 + 1e-9);
    let half = |w: Interval| w / (Interval::ONE + (Interval::ONE + w.sqr()).sqrt().expect("sqrt"));
    let v2 = half(half(v));
    atan_series(v2, 11) * 4.0
}

fn atan_point(x: f64) -> Interval {
    if x == 0.0 {
        return Interval::ZERO;
    }
    if x < 0.0 {
        return -atan_point(-x);
    }
    let series = if x == f64::INFINITY {
        *PI_2
    } else if x > 1.0 {
        *PI_2 - atan_small(Interval::point(x).recip().expect("recip"))
    } else {
        atan_small(Interval::point(x))
    };
    if x.is_finite() {
        series.meet(atan_bounds_rational(Interval::point(x)))
    } else {
        series
    }
}

pub(super) fn atan_iv(x: Interval) -> Interval {
    if x.is_point() {
        return atan_point(x.lo());
    }
    Interval::new(atan_point(x.lo()).lo(), atan_point(x.hi()).hi())
}

/// Argument reduction x = k*(pi/2) + r with |r| <~ pi/4.
/// Returns None when |x| is too large to reduce accurately.
fn reduce_half_pi(x: f64) -> Option<(i64, Interval)> {
    if x.abs() >= 1.1e12 {
        return None;
    }
    let k = (x * std::f64::consts::FRAC_2_PI).round();
    let r = Interval::point(x) - *PI_2 * k;
    Some((k as i64, r))
}

/// sin on |r| <~ 0.79 by the alternating odd series.
fn sin_series(r: Interval) -> Interval {
    let t = r.sqr();
    let mut term = r;
    let mut sum = r;
    for j in 1..9u32 {
        term = term * t / ((2 * j) * (2 * j + 1)) as f64;
        if j % 2 == 1 {
            sum = sum - term;
        } else {
            sum = sum + term;
        }
    }
    let m = Interval::point(r.mag());
    // First omitted term: r^19/19!
    let tail = (m.powi(19).expect("powi") / 1.21645100408832e17).hi() * 1.01;
    sum + Interval::new(-tail, tail)
}

fn cos_series(r: Interval) -> Interval {
    let t = r.sqr();
    let mut term = Interval::ONE;
    let mut sum = Interval::ONE;
    for j in 1..10u32 {
        term = term * t / ((2 * j - 1) * (2 * j)) as f64;
        if j % 2 == 1 {
            sum = sum - term;
        } else {
            sum = sum + term;
        }
    }
    let m = Interval::point(r.mag());
    let tail = (m.powi(20).expect("powi") / 2.43290200817664e18).hi() * 1.01;
    sum + Interval::new(-tail, tail)
}

const UNIT: Interval = Interval { lo: -1.0, hi: 1.0 };

fn sin_point(x: f64) -> Interval {
    let Some((k, r)) = reduce_half_pi(x) else {
        return UNIT;
    };
    let v = match k.rem_euclid(4) {
        0 => sin_series(r),
        1 => cos_series(r),
        2 => -sin_series(r),
        _ => -cos_series(r),
    };
    v.intersect(UNIT).expect("sin value")
}

fn cos_point(x: f64) -> Interval {
    let Some((k, r)) = reduce_half_pi(x) else {
        return UNIT;
    };
    let v = match k.rem_euclid(4) {
        0 => cos_series(r),
        1 => -sin_series(r),
        2 => -cos_series(r),
        _ => sin_series(r),
    };
    v.intersect(UNIT).expect("cos value")
}

/// Conservative test for an integer inside the interval; may report true
/// spuriously (which only widens downstream enclosures), never false.
fn holds_integer(t: Interval) -> bool {
    !t.is_finite() || t.hi().floor() >= t.lo().ceil()
}

pub(super) fn sin_iv(x: Interval) -> Interval {
    if x.is_point() {
        return sin_point(x.lo());
    }
    if !x.is_finite() || x.width() >= TWO_PI.lo() {
        return UNIT;
    }
    let base = sin_point(x.lo()).hull(sin_point(x.hi()));
    let has_max = holds_integer((x - *PI_2) / *TWO_PI);
    let has_min = holds_integer((x + *PI_2) / *TWO_PI);
    Interval::new(
        if has_min { -1.0 } else { base.lo().max(-1.0) },
        if has_max { 1.0 } else { base.hi().min(1.0) },
    )
}

pub(super) fn cos_iv(x: Interval) -> Interval {
    if x.is_point() {
        return cos_point(x.lo());
    }
    if !x.is_finite() || x.width() >= TWO_PI.lo() {
        return UNIT;
    }
    let base = cos_point(x.lo()).hull(cos_point(x.hi()));
    let has_max = holds_integer(x / *TWO_PI);
    let has_min = holds_integer((x - *PI) / *TWO_PI);
    Interval::new(
        if has_min { -1.0 } else { base.lo().max(-1.0) },
        if has_max { 1.0 } else { base.hi().min(1.0) },
    )
}

fn asin_point(x: f64) -> Result<Interval> {
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::domain(format!("asin of {x}")));
    }
    if x == 0.0 {
        return Ok(Interval::ZERO);
    }
    if x == 1.0 {
        return Ok(*PI_2);
    }
    if x == -1.0 {
        return Ok(-*PI_2);
    }
    // asin x = atan(x / sqrt(1-x^2)); 1-x^2 as (1-x)(1+x) for accuracy.
    let xi = Interval::point(x);
    let disc = (Interval::ONE - xi) * (Interval::ONE + xi);
    let den = disc.sqrt()?;
    Ok(atan_iv(xi.checked_div(den)?))
}

pub(super) fn asin_iv(x: Interval) -> Result<Interval> {
    if x.lo() < -1.0 || x.hi() > 1.0 {
        return Err(Error::domain(format!("asin of {x}")));
    }
    if x.is_point() {
        return asin_point(x.lo());
    }
    Ok(Interval::new(
        asin_point(x.lo())?.lo(),
        asin_point(x.hi())?.hi(),
    ))
}

pub(super) fn acos_iv(x: Interval) -> Result<Interval> {
    Ok(*PI_2 - asin_iv(x)?)
}
