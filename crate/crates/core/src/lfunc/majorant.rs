//! Pointwise upper bounds for |L(s, chi)| across the vertical strips used
//! by the contour estimates: a zeta bound to the right, a convexity-shaped
//! interpolation through the strip, and the reflected product to the left.

use crate::complex::ComplexInterval;
use crate::error::{Error, Result};
use crate::interval::{Interval, TWO_PI};
use crate::special::zeta_real;

/// Nearest integer with ties resolved toward zero, for sigma < 0.
pub(crate) fn nearest_toward_zero(sigma: f64) -> i64 {
    debug_assert!(sigma < 0.0);
    -((-sigma - 0.5).ceil() as i64)
}

fn right_branch(sigma: Interval) -> Result<Interval> {
    zeta_real(sigma)
}

fn middle_branch(s: ComplexInterval, q: u64, eta: f64) -> Result<Interval> {
    let z = zeta_real(Interval::point(1.0 + eta))?;
    let base = Interval::point(q as f64) * (s + ComplexInterval::ONE).abs() / *TWO_PI;
    let expo = (Interval::point(1.0 + eta) - s.re) * Interval::from_ratio(1, 2);
    Ok(z * base.pow(expo)?)
}

/// The left-of-strip product for a sigma range within one rounding cell:
/// zeta(1-sigma) (q/2pi)^(1/2-sigma) |s-[sigma]+1|^(1/2-sigma+[sigma])
/// prod_{j=1..-[sigma]} |s+j-1|.
fn left_branch(s: ComplexInterval, q: u64, m: i64) -> Result<Interval> {
    let sigma = s.re;
    let z = zeta_real(Interval::ONE - sigma)?;
    let half = Interval::from_ratio(1, 2);
    let scaled_q = Interval::point(q as f64) / *TWO_PI;
    let outer = scaled_q.pow(half - sigma)?;
    let anchor = (s + ComplexInterval::point(m as f64 + 1.0, 0.0)).abs();
    let inner = anchor.pow(half - sigma - Interval::point(m as f64))?;
    let mut trail = Interval::ONE;
    for j in 1..=m {
        trail = trail * (s + ComplexInterval::point(j as f64 - 1.0, 0.0)).abs();
    }
    Ok(z * outer * inner * trail)
}

/// Rigorous upper bound for |L(s, chi)| depending only on q = modulus and
/// the strip parameter eta in (0, 1/2]. Mixed rectangles are split at the
/// branch boundaries and at the rounding ties, then hulled.
pub fn l_magnitude_bound(s: ComplexInterval, q: u64, eta: f64) -> Result<Interval> {
    if !(eta > 0.0 && eta <= 0.5) {
        return Err(Error::domain(format!(
            "strip parameter must lie in (0, 1/2], got {eta}"
        )));
    }
    if q == 0 {
        return Err(Error::domain("modulus must be positive".to_string()));
    }
    if s.re.lo() < -60.0 {
        return Err(Error::domain(format!(
            "bound is not tabulated below sigma = -60, got {}",
            s.re
        )));
    }

    let mut cuts = vec![-eta, 1.0 + eta];
    let mut k = -0.5f64;
    while k > s.re.lo() - 1.0 {
        cuts.push(k);
        k -= 1.0;
    }

    let mut pieces = vec![s.re];
    for cut in cuts {
        let mut next = Vec::new();
        for piece in pieces {
            if piece.lo() < cut && cut < piece.hi() {
                next.push(Interval::new(piece.lo(), cut));
                next.push(Interval::new(cut, piece.hi()));
            } else {
                next.push(piece);
            }
        }
        pieces = next;
    }

    let mut out: Option<Interval> = None;
    for sigma in pieces {
        let piece_s = ComplexInterval::new(sigma, s.im);
        let value = if sigma.lo() >= 1.0 + eta {
            right_branch(sigma)?
        } else if sigma.lo() >= -eta {
            middle_branch(piece_s, q, eta)?
        } else {
            let m = -nearest_toward_zero(sigma.mid());
            if sigma.lo() < -(m as f64) - 0.5 || sigma.hi() > -(m as f64) + 0.5 {
                return Err(Error::Inconsistency(format!(
                    "rounding cell split failed on {sigma}"
                )));
            }
            left_branch(piece_s, q, m)?
        };
        out = Some(match out {
            None => value,
            Some(prev) => prev.hull(value),
        });
    }
    out.ok_or_else(|| Error::domain("empty sigma range".to_string()))
}
