//! Hurwitz zeta on complex rectangles through Euler-Maclaurin summation
//! with an explicit tail radius, plus a per-modulus evaluation cache.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use crate::characters::gcd;
use crate::complex::ComplexInterval;
use crate::error::{Error, Result};
use crate::interval::{Interval, TWO_PI};

/// B_{2k}/(2k)! for k = 1..=8, as exact ratios.
const BERNOULLI_WEIGHTS: [(i64, i64); 8] = [
    (1, 12),
    (-1, 720),
    (1, 30_240),
    (-1, 1_209_600),
    (1, 47_900_160),
    (-691, 1_307_674_368_000),
    (1, 74_724_249_600),
    (-3617, 10_670_622_842_880_000),
];

/// base^(-s) for a positive real base.
fn neg_pow(base: Interval, s: ComplexInterval) -> Result<ComplexInterval> {
    (-s).pow_base(base)
}

/// (e^w - 1)/w, well defined across w = 0.
fn expm1_over(w: ComplexInterval) -> Result<ComplexInterval> {
    let mag = w.abs();
    if !w.contains_zero() && mag.lo() >= 0.5 {
        return (w.exp() - ComplexInterval::ONE).checked_div(w);
    }
    if mag.hi() > 8.0 {
        return Err(Error::domain(format!(
            "series window for (e^w - 1)/w needs |w| <= 8, got {mag}"
        )));
    }
    const TERMS: usize = 24;
    let mut coeffs = [Interval::ONE; TERMS];
    for k in 1..TERMS {
        coeffs[k] = coeffs[k - 1] / (k + 1) as f64;
    }
    let mut acc = ComplexInterval::from_real(coeffs[TERMS - 1]);
    for k in (0..TERMS - 1).rev() {
        acc = acc * w + ComplexInterval::from_real(coeffs[k]);
    }
    let top = mag.powi(TERMS as i32)?;
    let rem = top * coeffs[TERMS - 1] / (TERMS + 1) as f64
        / (Interval::ONE - mag / (TERMS + 2) as f64);
    Ok(acc.pad(rem.hi()))
}

fn hurwitz_core(s: ComplexInterval, x: Interval, deflate: bool) -> Result<ComplexInterval> {
    if x.lo() <= 0.0 {
        return Err(Error::domain(format!("hurwitz shift must be positive, got {x}")));
    }
    if s.re.lo() <= -1.0 {
        return Err(Error::domain(format!(
            "hurwitz continuation stops at Re(s) = -1, got {}",
            s.re
        )));
    }
    if !deflate && s.contains_point(1.0, 0.0) {
        return Err(Error::PoleProximity);
    }

    let cutoff = 24usize.max(s.abs().hi().ceil() as usize + 16);
    let mut acc = ComplexInterval::ZERO;
    for n in 0..cutoff {
        acc = acc + neg_pow(x + n as f64, s)?;
    }

    let w = x + cutoff as f64;
    let w_c = ComplexInterval::from_real(w);
    let integral = if deflate {
        let scale = w.ln()?;
        expm1_over((ComplexInterval::ONE - s).scale(scale))?.scale(-scale)
    } else {
        (ComplexInterval::ONE - s)
            .pow_base(w)?
            .checked_div(s - ComplexInterval::ONE)?
    };
    let head = neg_pow(w, s)?;
    acc = acc + integral + head.scale(Interval::from_ratio(1, 2));

    let w_sq = ComplexInterval::from_real(w.sqr());
    let mut pochhammer = s;
    let mut power = head.checked_div(w_c)?;
    for (k, &(num, den)) in BERNOULLI_WEIGHTS.iter().enumerate() {
        acc = acc + (pochhammer * power).scale(Interval::from_ratio(num, den));
        let step = 2.0 * (k + 1) as f64;
        pochhammer = pochhammer
            * (s + ComplexInterval::point(step - 1.0, 0.0))
            * (s + ComplexInterval::point(step, 0.0));
        power = power.checked_div(w_sq)?;
    }

    let order = 2.0 * BERNOULLI_WEIGHTS.len() as f64;
    let decay = Interval::point(w.lo()).pow(-(Interval::point(s.re.lo()) + order))?;
    let tail = Interval::from_ratio(121, 50) / TWO_PI.powi(1 + order as i32)?
        * pochhammer.abs()
        * decay
        / (Interval::point(s.re.lo()) + order);
    Ok(acc.pad(tail.hi()))
}

/// Enclosure of zeta(s, x) = sum_{n>=0} (n+x)^(-s), continued to Re(s) > -1.
///
/// The cutoff sum is completed by the integral, half, and eight Bernoulli
/// correction terms; the dropped remainder is enclosed by
///   2 zeta(17) / (2 pi)^17 * |(s)_17| * (N+x)^(-sigma-16) / (sigma+16),
/// which bounds the periodic-Bernoulli integral form of the tail.
pub fn hurwitz_zeta(s: ComplexInterval, x: Interval) -> Result<ComplexInterval> {
    hurwitz_core(s, x, false)
}

/// zeta(s, x) - 1/(s-1): the pole-free part, defined across s = 1. Summing
/// it against a non-principal character reproduces L exactly, because the
/// subtracted poles cancel in the character sum.
pub fn hurwitz_zeta_deflated(s: ComplexInterval, x: Interval) -> Result<ComplexInterval> {
    hurwitz_core(s, x, true)
}

type SKey = [u64; 4];

fn s_key(s: ComplexInterval) -> SKey {
    [
        s.re.lo().to_bits(),
        s.re.hi().to_bits(),
        s.im.lo().to_bits(),
        s.im.hi().to_bits(),
    ]
}

/// Cached values of zeta(s, a/q) for the residues a coprime to q, so that
/// every character mod q can assemble its L-value from one shared pass.
pub struct HurwitzBank {
    modulus: u64,
    cache: RefCell<HashMap<SKey, Rc<Vec<Option<ComplexInterval>>>>>,
}

impl HurwitzBank {
    pub fn new(modulus: u64) -> HurwitzBank {
        assert!(modulus >= 1, "bank needs a positive modulus");
        HurwitzBank {
            modulus,
            cache: RefCell::new(HashMap::new()),
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Slot a of the returned vector holds zeta(s, a/q) when gcd(a,q)=1.
    pub fn values(&self, s: ComplexInterval) -> Result<Rc<Vec<Option<ComplexInterval>>>> {
        let key = s_key(s);
        if let Some(hit) = self.cache.borrow().get(&key) {
            return Ok(Rc::clone(hit));
        }
        let q = self.modulus;
        let mut row: Vec<Option<ComplexInterval>> = vec![None; q as usize + 1];
        for a in 1..=q {
            if gcd(a, q) == 1 {
                let shift = Interval::from_ratio(a as i64, q as i64);
                row[a as usize] = Some(hurwitz_zeta(s, shift)?);
            }
        }
        let row = Rc::new(row);
        self.cache.borrow_mut().insert(key, Rc::clone(&row));
        Ok(row)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::PI;
    use crate::special::zeta_real;

    #[test]
    fn shift_one_recovers_zeta() {
        let s = ComplexInterval::new(Interval::with_radius(2.0, 1e-12), Interval::point(0.0));
        let h = hurwitz_zeta(s, Interval::ONE).unwrap();
        let z = zeta_real(Interval::with_radius(2.0, 1e-12)).unwrap();
        assert!(h.re.intersect(z).is_some());
        assert!(h.im.contains_zero());
        assert!(h.re.width() < 1e-10);
    }

    #[test]
    fn half_shift_doubles_even_zeta() {
        // zeta(2, 1/2) = pi^2/2
        let h = hurwitz_zeta(ComplexInterval::point(2.0, 0.0), Interval::from_ratio(1, 2)).unwrap();
        let target = PI.sqr() / 2.0;
        assert!(h.re.intersect(target).is_some());
        assert!(h.re.width() < 1e-12);
    }

    #[test]
    fn direct_summation_brackets_value_at_three() {
        let x = Interval::from_ratio(1, 3);
        let mut partial = Interval::point(0.0);
        let terms = 10_000;
        for n in 0..=terms {
            partial = partial + (x + n as f64).powi(-3).unwrap();
        }
        let w_lo = x + (terms + 1) as f64;
        let w_hi = x + terms as f64;
        let bracket = partial + Interval::new((w_lo.sqr().recip().unwrap() / 2.0).lo(), (w_hi.sqr().recip().unwrap() / 2.0).hi());
        let h = hurwitz_zeta(ComplexInterval::point(3.0, 0.0), x).unwrap();
        assert!(h.re.intersect(bracket).is_some());
        assert!(h.re.width() < 1e-11);
    }

    #[test]
    fn deflation_removes_exactly_the_pole() {
        let s = ComplexInterval::point(2.0, 0.75);
        let x = Interval::from_ratio(2, 7);
        let plain = hurwitz_zeta(s, x).unwrap();
        let pole = (s - ComplexInterval::ONE).recip().unwrap();
        let deflated = hurwitz_zeta_deflated(s, x).unwrap();
        let diff = plain - pole - deflated;
        assert!(diff.contains_zero());
        assert!(diff.abs().hi() < 1e-10);
    }

    #[test]
    fn deflated_value_at_the_pole_is_digamma() {
        // zeta(s,x) - 1/(s-1) -> -digamma(x); at x = 1/2 that is gamma + 2 log 2.
        let v = hurwitz_zeta_deflated(ComplexInterval::point(1.0, 0.0), Interval::from_ratio(1, 2))
            .unwrap();
        let target = Interval::with_radius(1.963_510_026_021_423_5, 1e-12);
        assert!(v.re.intersect(target).is_some());
        assert!(v.im.contains_zero());

        let at_one =
            hurwitz_zeta_deflated(ComplexInterval::point(1.0, 0.0), Interval::ONE).unwrap();
        let euler = Interval::with_radius(0.577_215_664_901_532_9, 1e-12);
        assert!(at_one.re.intersect(euler).is_some());
    }

    #[test]
    fn recurrence_residual_vanishes_off_the_line() {
        // zeta(s,x) - zeta(s,x+1) - x^(-s) = 0 exercised below Re(s) = 1.
        let s = ComplexInterval::point(0.5, 3.0);
        let x = Interval::from_ratio(1, 3);
        let lhs = hurwitz_zeta(s, x).unwrap();
        let rhs = hurwitz_zeta(s, x + 1.0).unwrap() + neg_pow(x, s).unwrap();
        let diff = lhs - rhs;
        assert!(diff.contains_zero());
        assert!(diff.abs().hi() < 1e-10);
    }

    #[test]
    fn pole_neighborhood_is_rejected() {
        let s = ComplexInterval::new(Interval::new(0.98, 1.02), Interval::point(0.0));
        assert!(matches!(
            hurwitz_zeta(s, Interval::ONE),
            Err(Error::PoleProximity)
        ));
        assert!(hurwitz_zeta(ComplexInterval::point(2.0, 0.0), Interval::point(0.0)).is_err());
    }

    #[test]
    fn bank_shares_rows_between_lookups() {
        let bank = HurwitzBank::new(12);
        let s = ComplexInterval::point(1.5, 2.0);
        let first = bank.values(s).unwrap();
        let second = bank.values(s).unwrap();
        assert!(Rc::ptr_eq(&first, &second));
        assert!(first[5].is_some());
        assert!(first[4].is_none());
        assert_eq!(first.len(), 13);
    }
}
