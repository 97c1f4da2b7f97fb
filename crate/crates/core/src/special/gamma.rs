//! Im ln Gamma through a shifted Stirling approximation with an explicit
//! error radius, the derived correction term g(a,T), and a complex log-Gamma
//! for functional-equation work.

use crate::complex::ComplexInterval;
use crate::error::{Error, Result};
use crate::interval::{Interval, PI, PI_2, TWO_PI};
use crate::special::subdivide;

/// Numerator of the Stirling error radius: (4 + 3*pi)/1440.
fn radius_numerator() -> Interval {
    (Interval::point(4.0) + *PI * 3.0) / 1440.0
}

#[derive(Clone, Copy, Debug)]
pub struct StirlingEnclosure {
    /// Enclosure of Im ln Gamma, already widened by the error radius.
    pub value: Interval,
    /// Upper bound on the truncation radius that was applied.
    pub error_radius: f64,
}

/// The double-shifted Stirling expression for Im ln Gamma(x+iy):
///   y log(y/e) + (pi/2)(x - 1/2) - (x + 3/2) atan((x+2)/y)
///   - (y/12)/((x+2)^2 + y^2) + (y/2) log(1 + (x+2)^2/y^2)
///   + atan(x/y) + atan((x+1)/y),
/// valid within (4+3pi)/1440 * ((x+2)^2 + y^2)^(-3/2).
fn stirling_parts(x: Interval, y: Interval) -> Result<(Interval, Interval)> {
    let x2 = x + 2.0;
    let den = x2.sqr() + y.sqr();
    let ratio = x2.checked_div(y)?;
    let expr = y * (y.ln()? - Interval::ONE)
        + *PI_2 * (x - Interval::from_ratio(1, 2))
        - (x + Interval::from_ratio(3, 2)) * ratio.atan()
        - (y / 12.0).checked_div(den)?
        + (y * 0.5) * ratio.sqr().log1p()?
        + x.checked_div(y)?.atan()
        + (x + 1.0).checked_div(y)?.atan();
    let radius = radius_numerator().checked_div(den * den.sqrt()?)?;
    Ok((expr, radius))
}

/// Enclosure of Im ln Gamma(x+iy) for x >= 0, y > 0, by the shifted
/// Stirling expression widened by its error radius.
pub fn im_lngamma(x: Interval, y: Interval) -> Result<StirlingEnclosure> {
    if x.lo() < 0.0 || y.lo() <= 0.0 {
        return Err(Error::domain(format!(
            "im_lngamma needs x >= 0 and y > 0, got x={x}, y={y}"
        )));
    }
    let (expr, radius) = stirling_parts(x, y)?;
    let r = radius.hi();
    Ok(StirlingEnclosure {
        value: expr + Interval::new(-r, r),
        error_radius: r,
    })
}

/// Same value, but with extra exact recurrence shifts
///   Im ln Gamma(x+iy) = Im ln Gamma(x+k+iy) - sum_{j<k} arg(x+j+iy)
/// applied first so the Stirling radius drops below `max_radius`. The shift
/// terms are plain arctangents and cost only ulps.
pub fn im_lngamma_refined(x: Interval, y: Interval, max_radius: f64) -> Result<StirlingEnclosure> {
    if x.lo() < 0.0 || y.lo() <= 0.0 {
        return Err(Error::domain(format!(
            "im_lngamma needs x >= 0 and y > 0, got x={x}, y={y}"
        )));
    }
    assert!(max_radius > 0.0);
    // Radius <= C / (x+k+2)^3, so k >= cbrt(C/max_radius) - 2 - x suffices.
    let needed = (radius_numerator().hi() / max_radius).cbrt() - 2.0 - x.lo();
    let k = needed.ceil().max(0.0) as u32;
    let mut arg_sum = Interval::ZERO;
    for j in 0..k {
        // arg(x+j+iy) = pi/2 - atan((x+j)/y) for y > 0.
        arg_sum = arg_sum + (*PI_2 - (x + j as f64).checked_div(y)?.atan());
    }
    let (expr, radius) = stirling_parts(x + k as f64, y)?;
    let r = radius.hi();
    debug_assert!(r <= max_radius * 1.000001);
    Ok(StirlingEnclosure {
        value: expr - arg_sum + Interval::new(-r, r),
        error_radius: r,
    })
}

/// g(a,T) = (2/pi) Im ln Gamma(1/4 + a/2 + iT/2) - (T/pi) log(T/2e)
///          - (2a-1)/4, for a in {0,1}, T >= 5/7.
pub fn g_of(a: u8, t: Interval) -> Result<Interval> {
    g_impl(a, t, None)
}

/// g(a,T) with the Stirling radius of the Gamma term driven below
/// `max_radius` (before the 2/pi scaling).
pub fn g_of_refined(a: u8, t: Interval, max_radius: f64) -> Result<Interval> {
    g_impl(a, t, Some(max_radius))
}

fn g_impl(a: u8, t: Interval, max_radius: Option<f64>) -> Result<Interval> {
    assert!(a <= 1);
    if t.lo() < Interval::from_ratio(5, 7).lo() {
        return Err(Error::domain(format!("g(a,T) needs T >= 5/7, got {t}")));
    }
    let mut out: Option<Interval> = None;
    for piece in subdivide(t, 0.25) {
        let x = Interval::from_ratio(1 + 2 * a as i64, 4);
        let y = piece * 0.5;
        let lg = match max_radius {
            None => im_lngamma(x, y)?,
            Some(r) => im_lngamma_refined(x, y, r)?,
        };
        let val = lg.value * 2.0 / *PI
            - (piece / *PI) * (piece.ln()? - *crate::interval::LN2 - Interval::ONE)
            - Interval::from_ratio(2 * a as i64 - 1, 4);
        out = Some(match out {
            None => val,
            Some(acc) => acc.hull(val),
        });
    }
    Ok(out.expect("at least one piece"))
}

/// Principal ln Gamma on rectangles avoiding the poles and the branch cut,
/// by shifting to Re >= 16 and applying Stirling's series with the explicit
/// remainder |R2| <= (4+3pi)/(1440 |z|^3).
pub fn lngamma_complex(z: ComplexInterval) -> Result<ComplexInterval> {
    let shift = (16.0 - z.re.lo()).ceil().max(0.0) as u32;
    let mut log_sum = ComplexInterval::ZERO;
    for j in 0..shift {
        let zj = z + ComplexInterval::point(j as f64, 0.0);
        log_sum = log_sum + zj.ln()?;
    }
    let zs = z + ComplexInterval::point(shift as f64, 0.0);
    let ln_zs = zs.ln()?;
    let half_log_2pi = TWO_PI.ln()? * 0.5;
    let stirling = (zs - ComplexInterval::point(0.5, 0.0)) * ln_zs - zs
        + ComplexInterval::from_real(half_log_2pi)
        + (ComplexInterval::point(12.0, 0.0) * zs).recip()?;
    // Classical remainder after the 1/(12z) term: |R| <= (1/360)|z|^-3
    // sec^4(arg z / 2), and sec^4 <= 4 on the right half-plane.
    let r = Interval::from_ratio(1, 90)
        .checked_div(zs.abs().powi(3)?)?
        .hi();
    Ok(stirling.pad(r) - log_sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_radius_matches_closed_form() {
        // At x = 1/4, y = 1/2 the radius is (4+3pi)/1440 / ((9/4)^2+(1/2)^2)^(3/2).
        let e = im_lngamma(
            Interval::from_ratio(1, 4),
            Interval::from_ratio(1, 2),
        )
        .unwrap();
        let den = Interval::from_ratio(9, 4).sqr() + Interval::from_ratio(1, 2).sqr();
        let expected = radius_numerator() / (den * den.sqrt().unwrap());
        assert!(
            expected.contains(e.error_radius) || (e.error_radius - expected.hi()).abs() < 1e-18,
            "radius {} vs {expected:?}",
            e.error_radius
        );
        assert!(e.value.width() >= 2.0 * e.error_radius);
    }

    #[test]
    fn real_axis_limit_is_zero() {
        let e = im_lngamma(Interval::point(1.0), Interval::point(1e-6)).unwrap();
        assert!(e.value.contains(0.0) || e.value.mag() < 1e-3);
        assert!(e.value.contains(-5.772e-7));
    }

    #[test]
    fn refined_and_plain_agree() {
        let x = Interval::from_ratio(1, 4);
        let y = Interval::point(0.5);
        let plain = im_lngamma(x, y).unwrap();
        let refined = im_lngamma_refined(x, y, 1e-9).unwrap();
        assert!(refined.error_radius <= 1e-9);
        assert!(plain.value.intersect(refined.value).is_some());
        assert!(refined.value.width() < plain.value.width());
    }

    #[test]
    fn g_respects_proposition_window() {
        // T g(0,T) lies in [0.0213, 0.0358] for T in [1, 129/128];
        // sample on subintervals to keep dependency loss below the margin.
        let mut hullv: Option<Interval> = None;
        for i in 0..16 {
            let t = Interval::new(
                1.0 + i as f64 / (128.0 * 16.0),
                1.0 + (i + 1) as f64 / (128.0 * 16.0),
            );
            let tg = t * g_of_refined(0, t, 1e-8).unwrap();
            hullv = Some(match hullv {
                None => tg,
                Some(h) => h.hull(tg),
            });
        }
        let tg = hullv.unwrap();
        assert!(tg.lo() >= 0.0213 && tg.hi() <= 0.0358, "{tg:?}");
        // |g(1, 10^4)| <= 1/(50 * 10^4); the enclosure holds comfortably
        // because g is computed as a difference of ~1e4-sized terms and
        // the cancellation costs only ulps at this scale.
        let g1 = g_of(1, Interval::point(1e4)).unwrap();
        assert!(g1.mag() <= 1.0 / (50.0 * 1e4), "{g1:?}");
    }

    #[test]
    fn g_rejects_small_t() {
        assert!(g_of(0, Interval::point(0.5)).is_err());
    }

    #[test]
    fn complex_lngamma_matches_known_points() {
        // Gamma(5) = 24.
        let l = lngamma_complex(ComplexInterval::point(5.0, 0.0)).unwrap();
        let v = l.exp();
        assert!(v.contains_point(24.0, 0.0), "{v}");
        assert!(v.re.width() < 1e-2);
        // ln Gamma(1/2) = ln sqrt(pi).
        let l = lngamma_complex(ComplexInterval::point(0.5, 0.0)).unwrap();
        let target = (PI.sqrt().unwrap()).ln().unwrap();
        assert!(l.re.intersect(target).is_some());
        assert!(l.im.contains(0.0));
    }

    #[test]
    fn complex_lngamma_agrees_with_imaginary_part_lemma() {
        let z = ComplexInterval::point(0.25, 0.5);
        let full = lngamma_complex(z).unwrap();
        let lemma = im_lngamma(Interval::point(0.25), Interval::point(0.5)).unwrap();
        assert!(
            full.im.intersect(lemma.value).is_some(),
            "{} vs {:?}",
            full.im,
            lemma.value
        );
    }
}
