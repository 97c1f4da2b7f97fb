//! Directed-rounding scalar kernels.
//!
//! Hardware rounds to nearest; we recover outward-rounded endpoints with
//! error-free transformations. A correctly rounded result y of an exact value
//! v always satisfies v in [next_down(y), next_up(y)], so one ulp step is
//! sufficient. The EFT residual tells us when y is already exact, which keeps
//! dyadic arithmetic (sums, products, quotients of small powers of two)
//! perfectly tight instead of leaking an ulp per operation.
//!
//! Residuals from `mul_add` are only trustworthy when the rounded result is
//! comfortably normal; near the subnormal range the residual itself can
//! underflow to zero and falsely report exactness, so we nudge
//! unconditionally there.

pub const TINY: f64 = 4.9406564584124654e-324; // smallest positive subnormal

/// Smallest magnitude at which mul/div/sqrt residuals are trusted.
const RESIDUAL_FLOOR: f64 = 1e-290;

#[inline]
pub fn next_up(x: f64) -> f64 {
    x.next_up()
}

#[inline]
pub fn next_down(x: f64) -> f64 {
    x.next_down()
}

/// Knuth's TwoSum: s = fl(a+b) and the exact residual a+b-s.
/// The residual of a floating-point addition is always representable,
/// so this is exact for all finite inputs with finite s.
#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let ap = s - b;
    let bp = s - ap;
    (s, (a - ap) + (b - bp))
}

#[inline]
pub fn add_lo(a: f64, b: f64) -> f64 {
    let (s, e) = two_sum(a, b);
    if !s.is_finite() {
        // -inf is a valid lower endpoint; +inf overflow means the exact
        // value is merely larger than MAX.
        return if s == f64::INFINITY { f64::MAX } else { s };
    }
    if e < 0.0 || e.is_nan() {
        next_down(s)
    } else {
        s
    }
}

#[inline]
pub fn add_hi(a: f64, b: f64) -> f64 {
    let (s, e) = two_sum(a, b);
    if !s.is_finite() {
        return if s == f64::NEG_INFINITY { f64::MIN } else { s };
    }
    if e > 0.0 || e.is_nan() {
        next_up(s)
    } else {
        s
    }
}

#[inline]
pub fn sub_lo(a: f64, b: f64) -> f64 {
    add_lo(a, -b)
}

#[inline]
pub fn sub_hi(a: f64, b: f64) -> f64 {
    add_hi(a, -b)
}

/// Lower bound on the exact product a*b. Zero times anything (including
/// infinity) is treated as exactly zero, which is the convention soundly
/// matching interval endpoints at zero.
#[inline]
pub fn mul_lo(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        return 0.0;
    }
    let p = a * b;
    if !p.is_finite() {
        return if p == f64::INFINITY { f64::MAX } else { p };
    }
    if p == 0.0 {
        // Underflow of a nonzero exact product.
        return if (a > 0.0) == (b > 0.0) { 0.0 } else { -TINY };
    }
    if p.abs() < RESIDUAL_FLOOR {
        return next_down(p);
    }
    let e = a.mul_add(b, -p);
    if e < 0.0 || e.is_nan() {
        next_down(p)
    } else {
        p
    }
}

#[inline]
pub fn mul_hi(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        return 0.0;
    }
    let p = a * b;
    if !p.is_finite() {
        return if p == f64::NEG_INFINITY { f64::MIN } else { p };
    }
    if p == 0.0 {
        return if (a > 0.0) == (b > 0.0) { TINY } else { 0.0 };
    }
    if p.abs() < RESIDUAL_FLOOR {
        return next_up(p);
    }
    let e = a.mul_add(b, -p);
    if e > 0.0 || e.is_nan() {
        next_up(p)
    } else {
        p
    }
}

/// Lower bound on the exact quotient a/b, b nonzero and finite.
#[inline]
pub fn div_lo(a: f64, b: f64) -> f64 {
    if a == 0.0 {
        return 0.0;
    }
    let q = a / b;
    if !q.is_finite() {
        return if q == f64::INFINITY { f64::MAX } else { q };
    }
    if q == 0.0 {
        return if (a > 0.0) == (b > 0.0) { 0.0 } else { -TINY };
    }
    if q.abs() < RESIDUAL_FLOOR {
        return next_down(q);
    }
    // r = fl(q*b - a) is exact here and has the sign of q*b - a.
    // q too small  <=>  a/b > q  <=>  r and b have opposite signs... sign
    // analysis: a/b - q = -r/b, so the quotient exceeds q iff r/b < 0.
    let r = q.mul_add(b, -a);
    if r == 0.0 {
        q
    } else if (r > 0.0) != (b > 0.0) {
        // exact quotient is above q; q already a valid lower bound
        q
    } else if r.is_nan() {
        next_down(q)
    } else {
        next_down(q)
    }
}

#[inline]
pub fn div_hi(a: f64, b: f64) -> f64 {
    if a == 0.0 {
        return 0.0;
    }
    let q = a / b;
    if !q.is_finite() {
        return if q == f64::NEG_INFINITY { f64::MIN } else { q };
    }
    if q == 0.0 {
        return if (a > 0.0) == (b > 0.0) { TINY } else { 0.0 };
    }
    if q.abs() < RESIDUAL_FLOOR {
        return next_up(q);
    }
    let r = q.mul_add(b, -a);
    if r == 0.0 {
        q
    } else if (r > 0.0) == (b > 0.0) {
        // exact quotient is below q
        q
    } else if r.is_nan() {
        next_up(q)
    } else {
        next_up(q)
    }
}

/// Lower bound on sqrt(a), a >= 0 finite.
#[inline]
pub fn sqrt_lo(a: f64) -> f64 {
    if a == 0.0 {
        return 0.0;
    }
    let s = a.sqrt();
    if s.abs() < RESIDUAL_FLOOR {
        return next_down(s).max(0.0);
    }
    // r = fl(s*s - a) exact; true sqrt exceeds s iff s*s < a.
    let r = s.mul_add(s, -a);
    if r <= 0.0 {
        s
    } else {
        next_down(s)
    }
}

#[inline]
pub fn sqrt_hi(a: f64) -> f64 {
    if a == 0.0 {
        return 0.0;
    }
    if a == f64::INFINITY {
        return f64::INFINITY;
    }
    let s = a.sqrt();
    if s.abs() < RESIDUAL_FLOOR {
        return next_up(s);
    }
    let r = s.mul_add(s, -a);
    if r >= 0.0 {
        s
    } else {
        next_up(s)
    }
}
