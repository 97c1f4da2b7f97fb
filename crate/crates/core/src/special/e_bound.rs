//! The explicit majorant E(a,d,T) for the Stirling difference
//!   |Im ln Gamma((sigma+a+iT)/2) changes over sigma in [1/2-d, 1/2+d]|,
//! valid for a in {0,1}, 0 <= d < 9/2, T >= 5/7.

use crate::error::{Error, Result};
use crate::interval::{Interval, PI};
use crate::special::subdivide;

/// (8 + 6*pi)/45, the constant in the cubic-decay terms.
fn cubic_constant() -> Interval {
    (Interval::point(8.0) + *PI * 6.0) / 45.0
}

fn check_domain(a: u8, d: Interval, t: Interval) -> Result<()> {
    assert!(a <= 1);
    if d.lo() < 0.0 || d.hi() >= 4.5 {
        return Err(Error::domain(format!("E(a,d,T) needs 0 <= d < 9/2, got d={d}")));
    }
    if t.lo() < Interval::from_ratio(5, 7).lo() {
        return Err(Error::domain(format!("E(a,d,T) needs T >= 5/7, got T={t}")));
    }
    Ok(())
}

fn e_terms(a: u8, d: Interval, t: Interval) -> Result<Interval> {
    let a = a as f64;
    let two_t = t * 2.0;
    let four_t2 = two_t.sqr();
    // The three shifted abscissae 2a+2d+17, 2a-2d+17, 2a+17 are all positive
    // on the admissible domain.
    let p = d * 2.0 + (2.0 * a + 17.0);
    let m = (2.0 * a + 17.0) - d * 2.0;
    let z = Interval::point(2.0 * a + 17.0);
    let den_p = p.sqr() + four_t2;
    let den_m = m.sqr() + four_t2;
    let den_z = z.sqr() + four_t2;

    let t_third = t * Interval::from_ratio(2, 3);
    let mut total = t_third.checked_div(den_p)? + t_third.checked_div(den_m)?
        - (t * Interval::from_ratio(4, 3)).checked_div(den_z)?;

    total = total + (t * 0.5) * z.checked_div(two_t)?.sqr().log1p()?
        - (t * 0.25) * p.checked_div(two_t)?.sqr().log1p()?
        - (t * 0.25) * m.checked_div(two_t)?.sqr().log1p()?;

    let c = cubic_constant();
    total = total
        + c.checked_div(den_p * den_p.sqrt()?)?
        + c.checked_div(den_m * den_m.sqrt()?)?
        + (c * 2.0).checked_div(den_z * den_z.sqrt()?)?;

    for k in [1.0, 5.0, 9.0, 13.0] {
        let base = ((2.0 * a + k) / two_t).atan();
        let plus = ((d * 2.0 + (2.0 * a + k)) / two_t).atan();
        let minus = (((2.0 * a + k) - d * 2.0) / two_t).atan();
        total = total + base * 2.0 - plus - minus;
    }

    total = total
        + ((d * 2.0 + (2.0 * a + 15.0)) / 4.0) * (p / two_t).atan()
        + (((2.0 * a + 15.0) - d * 2.0) / 4.0) * (m / two_t).atan()
        - Interval::point((2.0 * a + 15.0) / 2.0) * (z / two_t).atan();
    Ok(total)
}

/// Enclosure of E(a,d,T); wide d or T arguments are cut into pieces of
/// width at most 1/4 before evaluation to limit dependency loss.
pub fn e_of(a: u8, d: Interval, t: Interval) -> Result<Interval> {
    check_domain(a, d, t)?;
    let mut out: Option<Interval> = None;
    for dp in subdivide(d, 0.25) {
        for tp in subdivide(t, 0.25) {
            let v = e_terms(a, dp, tp)?;
            out = Some(match out {
                None => v,
                Some(acc) => acc.hull(v),
            });
        }
    }
    Ok(out.expect("at least one piece"))
}

/// E(a,0,T) collapses to 4*(8+6pi)/45 * ((2a+17)^2 + 4T^2)^(-3/2).
pub fn e_collapsed_at_zero(a: u8, t: Interval) -> Result<Interval> {
    check_domain(a, Interval::ZERO, t)?;
    let z = Interval::point(2.0 * a as f64 + 17.0);
    let den = z.sqr() + (t * 2.0).sqr();
    (cubic_constant() * 4.0).checked_div(den * den.sqrt()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_offset_matches_closed_form() {
        for (a, t) in [(0u8, 1.0), (1u8, 5.0 / 7.0), (0u8, 88.25)] {
            let t = Interval::point(t);
            let full = e_of(a, Interval::ZERO, t).unwrap();
            let collapsed = e_collapsed_at_zero(a, t).unwrap();
            assert!(full.intersect(collapsed).is_some(), "{full:?} vs {collapsed:?}");
            assert!((full - collapsed).mag() < 1e-12);
        }
    }

    #[test]
    fn increasing_in_offset() {
        for (a, t) in [(0u8, 1.0), (1u8, 2.0), (0u8, 10.0)] {
            let t = Interval::point(t);
            let lo = e_of(a, Interval::point(0.3), t).unwrap();
            let hi = e_of(a, Interval::point(0.5), t).unwrap();
            assert!(lo.hi() < hi.lo(), "a={a} t={t}: {lo:?} !< {hi:?}");
        }
    }

    #[test]
    fn positive_on_spot_grid() {
        for a in [0u8, 1] {
            for d in [0.0, 0.25, 1.0, 3.0, 4.4] {
                for t in [5.0 / 7.0, 1.0, 7.5, 400.0] {
                    let e = e_of(a, Interval::point(d), Interval::point(t)).unwrap();
                    assert!(e.lo() > 0.0, "E({a},{d},{t}) = {e:?}");
                }
            }
        }
    }

    #[test]
    fn pinned_value_at_reference_offset() {
        // d = 835/512 - 835/(512 sqrt 2), T = 1, a = 0.
        let scale = Interval::from_ratio(835, 512);
        let d = scale - scale / *crate::interval::SQRT2;
        let e = e_of(0, d, Interval::ONE).unwrap();
        assert!(e.hi() <= 0.1616976, "{e:?}");
        assert!(e.lo() >= 0.1616974, "{e:?}");
    }

    #[test]
    fn domain_is_enforced() {
        assert!(e_of(0, Interval::point(-0.1), Interval::ONE).is_err());
        assert!(e_of(0, Interval::point(4.6), Interval::ONE).is_err());
        assert!(e_of(0, Interval::ZERO, Interval::point(0.5)).is_err());
    }
}
