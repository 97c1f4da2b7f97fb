//! Zero counting through the argument principle: the smooth main term plus
//! the argument variation of L around the rectangle with corners at
//! sigma in {1/2, 3} and ordinates -T, T, anchored on the Euler product.

use crate::characters::{gcd, DirichletCharacter};
use crate::complex::ComplexInterval;
use crate::error::{Error, Result};
use crate::interval::{Interval, PI, TWO_PI};
use crate::lfunc::hurwitz::HurwitzBank;
use crate::lfunc::value::l_value_banked;
use crate::special::im_lngamma_refined;

/// Prime powers up to this cutoff feed the Euler-product anchor; the rest
/// is absorbed into a tail radius of 1/(2*cutoff^2).
const EULER_CUTOFF: u64 = 1500;

const RELATIVE_NUDGE: f64 = 1.0 / (1 << 20) as f64;
const MAX_NUDGES: u32 = 48;

#[derive(Clone, Debug)]
pub struct CountResult {
    /// Number of zeros with |ordinate| <= t_used, after nudging.
    pub count: u64,
    /// Enclosure of the count before integer extraction.
    pub window: Interval,
    /// The ordinate actually used (input times a few relative nudges).
    pub t_used: f64,
    pub nudges: u32,
    /// Named enclosures of the contributing terms.
    pub audit: Vec<(String, Interval)>,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Im log L(3 + it, chi) on the Euler-product branch.
fn euler_anchor(t: f64, chi: &DirichletCharacter) -> Result<Interval> {
    let q = chi.modulus();
    let mut acc = ComplexInterval::ZERO;
    for p in 2..=EULER_CUTOFF {
        if !is_prime(p) || gcd(p, q) != 1 {
            continue;
        }
        let ln_p = Interval::point(p as f64).ln()?;
        let mut pk = p;
        let mut k = 1i32;
        while pk <= EULER_CUTOFF {
            let angle = ln_p * (-(k as f64) * t);
            let weight = Interval::point(p as f64).powi(-3 * k)? / k as f64;
            acc = acc + (chi.value(pk % q) * ComplexInterval::unit_circle(angle)).scale(weight);
            pk *= p;
            k += 1;
        }
    }
    let tail = 0.5 / (EULER_CUTOFF as f64 * EULER_CUTOFF as f64);
    Ok(acc.pad(tail).im)
}

/// One continuation step from the right edge of [lo, hi] x {t} to its left
/// edge. `cur` encloses the continuous argument at the right edge; the
/// return value (if the segment is decisive) encloses it at the left edge.
fn try_step(
    chi: &DirichletCharacter,
    bank: &HurwitzBank,
    im: Interval,
    lo: f64,
    hi: f64,
    cur: Interval,
) -> Result<Option<Interval>> {
    let seg = ComplexInterval::new(Interval::new(lo, hi), im);
    let rect = l_value_banked(seg, chi, bank)?;
    if rect.contains_zero() {
        return Ok(None);
    }
    let swing = match rect.arg_continuous() {
        Ok(a) if a.width() < 1.2 => a,
        _ => return Ok(None),
    };
    let turns = ((cur.mid() - swing.mid()) / TWO_PI.mid()).round();
    let branch = swing + *TWO_PI * turns;
    if cur.intersect(branch).is_none() {
        return Ok(None);
    }

    let left = l_value_banked(ComplexInterval::new(Interval::point(lo), im), chi, bank)?;
    if left.contains_zero() {
        return Err(Error::NudgeNeeded);
    }
    let left_arg = left.arg_continuous()?;
    let align = ((branch.mid() - left_arg.mid()) / TWO_PI.mid()).round();
    Ok((left_arg + *TWO_PI * align).intersect(branch))
}

fn advance(
    chi: &DirichletCharacter,
    bank: &HurwitzBank,
    im: Interval,
    lo: f64,
    hi: f64,
    cur: &mut Interval,
) -> Result<()> {
    if let Some(next) = try_step(chi, bank, im, lo, hi, *cur)? {
        *cur = next;
        return Ok(());
    }
    if hi - lo < 1e-5 {
        return Err(Error::NudgeNeeded);
    }
    let mid = 0.5 * (lo + hi);
    advance(chi, bank, im, mid, hi, cur)?;
    advance(chi, bank, im, lo, mid, cur)
}

/// Continuous argument of L at 1/2 + it, continued leftward from the
/// Euler-product anchor at 3 + it.
fn center_argument(t: f64, chi: &DirichletCharacter, bank: &HurwitzBank) -> Result<Interval> {
    let mut cur = euler_anchor(t, chi)?;
    advance(chi, bank, Interval::point(t), 0.5, 3.0, &mut cur)?;
    Ok(cur)
}

fn count_once(t: f64, chi: &DirichletCharacter, bank: &HurwitzBank) -> Result<CountResult> {
    let meta = chi.meta();
    if !meta.is_primitive || chi.is_principal() {
        return Err(Error::NotPrimitive {
            conductor: meta.conductor,
            modulus: chi.modulus(),
        });
    }
    if !(t > 0.0) {
        return Err(Error::domain(format!("ordinate must be positive, got {t}")));
    }

    let q = chi.modulus();
    let x = Interval::from_ratio(1 + 2 * meta.parity as i64, 4);
    let lg = im_lngamma_refined(x, Interval::point(t) * Interval::from_ratio(1, 2), 1e-9)?;
    let main = Interval::point(t) * (Interval::point(q as f64) / *PI).ln()? / *PI
        + lg.value * 2.0 / *PI;

    let conj = chi.conjugate();
    let center_plus = center_argument(t, chi, bank)?;
    let center_minus = center_argument(t, &conj, bank)?;
    let window = main + (center_plus + center_minus) / *PI;

    let lo = window.lo().ceil();
    let hi = window.hi().floor();
    if lo > hi {
        return Err(Error::Inconsistency(format!(
            "count window {window} contains no integer"
        )));
    }
    if lo < hi {
        return Err(Error::Inconsistency(format!(
            "count window {window} is too wide"
        )));
    }
    if lo < 0.0 {
        return Err(Error::Inconsistency(format!(
            "count window {window} is negative"
        )));
    }

    Ok(CountResult {
        count: lo as u64,
        window,
        t_used: t,
        nudges: 0,
        audit: vec![
            ("smooth main term".to_string(), main),
            ("center argument".to_string(), center_plus),
            ("center argument, conjugate".to_string(), center_minus),
            ("count window".to_string(), window),
        ],
    })
}

/// N(T, chi) with automatic upward nudging of T when a zero sits too close
/// to the contour for the enclosures to separate.
pub fn arg_principal_count_banked(
    t: f64,
    chi: &DirichletCharacter,
    bank: &HurwitzBank,
) -> Result<CountResult> {
    let mut t_cur = t;
    let mut nudges = 0;
    loop {
        match count_once(t_cur, chi, bank) {
            Err(Error::NudgeNeeded) if nudges < MAX_NUDGES => {
                nudges += 1;
                t_cur *= 1.0 + RELATIVE_NUDGE;
            }
            Ok(mut r) => {
                r.nudges = nudges;
                return Ok(r);
            }
            Err(e) => return Err(e),
        }
    }
}

pub fn arg_principal_count(t: f64, chi: &DirichletCharacter) -> Result<CountResult> {
    let bank = HurwitzBank::new(chi.modulus());
    arg_principal_count_banked(t, chi, &bank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::{enumerate_all, enumerate_primitive};

    #[test]
    fn quadratic_mod_three_counts() {
        let chi = &enumerate_primitive(3, true)[0];
        let low = arg_principal_count(4.0, chi).unwrap();
        assert_eq!(low.count, 0);
        assert!(low.window.width() < 0.05, "window {}", low.window);
        // one zero near 8.04 on each side of the real axis
        let high = arg_principal_count(9.0, chi).unwrap();
        assert_eq!(high.count, 2);
    }

    #[test]
    fn counts_are_monotone_in_t() {
        let chi = &enumerate_primitive(5, true)[0];
        let mut last = 0;
        for t in [2.0, 4.0, 6.0] {
            let r = arg_principal_count(t, chi).unwrap();
            assert!(r.count >= last, "count dropped at t={t}");
            last = r.count;
        }
    }

    #[test]
    fn induced_characters_are_refused() {
        let lifted = enumerate_all(9)
            .into_iter()
            .find(|c| !c.is_principal() && !c.meta().is_primitive)
            .unwrap();
        assert!(matches!(
            arg_principal_count(1.0, &lifted),
            Err(Error::NotPrimitive { .. })
        ));
    }
}
