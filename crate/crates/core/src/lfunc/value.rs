//! Dirichlet L-values assembled from Hurwitz zeta rows, the completed
//! product, and the reflection route to the left half-plane.

use crate::characters::{gauss_root, DirichletCharacter};
use crate::complex::ComplexInterval;
use crate::error::{Error, Result};
use crate::interval::{Interval, PI};
use crate::lfunc::hurwitz::{hurwitz_zeta_deflated, HurwitzBank};
use crate::special::lngamma_complex;

/// L(s, chi) = q^(-s) sum_a chi(a) zeta(s, a/q), valid for Re(s) > -1
/// away from s = 1 (where only the principal character has a pole, but the
/// Hurwitz backend refuses the point for every character).
pub fn l_value(s: ComplexInterval, chi: &DirichletCharacter) -> Result<ComplexInterval> {
    let bank = HurwitzBank::new(chi.modulus());
    l_value_banked(s, chi, &bank)
}

/// Same value, drawing the Hurwitz row from a shared per-modulus cache.
pub fn l_value_banked(
    s: ComplexInterval,
    chi: &DirichletCharacter,
    bank: &HurwitzBank,
) -> Result<ComplexInterval> {
    let q = chi.modulus();
    if bank.modulus() != q {
        return Err(Error::domain(format!(
            "bank modulus {} does not match character modulus {q}",
            bank.modulus()
        )));
    }
    if s.contains_point(1.0, 0.0) {
        if chi.is_principal() {
            return Err(Error::PoleProximity);
        }
        // The non-principal character sum annihilates the subtracted poles,
        // so the deflated backend continues L through s = 1.
        let mut acc = ComplexInterval::ZERO;
        for a in 1..=q {
            if chi.exponent_of(a).is_some() {
                let shift = Interval::from_ratio(a as i64, q as i64);
                acc = acc + chi.value(a) * hurwitz_zeta_deflated(s, shift)?;
            }
        }
        let prefactor = (-s).pow_base(Interval::point(q as f64))?;
        return Ok(prefactor * acc);
    }
    let row = bank.values(s)?;
    let mut acc = ComplexInterval::ZERO;
    for a in 1..=q {
        if let Some(z) = row[a as usize] {
            acc = acc + chi.value(a) * z;
        }
    }
    let prefactor = (-s).pow_base(Interval::point(q as f64))?;
    Ok(prefactor * acc)
}

/// The completed product (q/pi)^(s/2) Gamma((s+a)/2) L(s, chi), where a is
/// the parity of chi.
pub fn completed_lambda(s: ComplexInterval, chi: &DirichletCharacter) -> Result<ComplexInterval> {
    let a = ComplexInterval::point(chi.meta().parity as f64, 0.0);
    let half = Interval::from_ratio(1, 2);
    let gamma = lngamma_complex((s + a).scale(half))?.exp();
    let base = Interval::point(chi.modulus() as f64) / *PI;
    let prefactor = s.scale(half).pow_base(base)?;
    Ok(prefactor * gamma * l_value(s, chi)?)
}

/// Lambda(s, chi) - eps(chi) Lambda(1-s, conj chi); encloses zero whenever
/// the evaluation succeeds on a primitive character.
pub fn functional_equation_residual(
    s: ComplexInterval,
    chi: &DirichletCharacter,
) -> Result<ComplexInterval> {
    let (_, eps) = gauss_root(chi)?;
    let direct = completed_lambda(s, chi)?;
    let reflected = completed_lambda(ComplexInterval::ONE - s, &chi.conjugate())?;
    Ok(direct - eps * reflected)
}

/// L(s, chi) for Re(s) < 1/2, routed through the functional equation:
///   eps(chi) (q/pi)^((1-2s)/2) Gamma((1-s+a)/2)/Gamma((s+a)/2) L(1-s, conj chi).
pub fn l_value_reflected(
    s: ComplexInterval,
    chi: &DirichletCharacter,
) -> Result<ComplexInterval> {
    if s.re.hi() >= 0.5 {
        return Err(Error::domain(format!(
            "reflection route expects Re(s) < 1/2, got {}",
            s.re
        )));
    }
    let (_, eps) = gauss_root(chi)?;
    let a = ComplexInterval::point(chi.meta().parity as f64, 0.0);
    let half = Interval::from_ratio(1, 2);
    let w = ComplexInterval::ONE - s;
    let partner = l_value(w, &chi.conjugate())?;
    let base = Interval::point(chi.modulus() as f64) / *PI;
    let prefactor = (ComplexInterval::ONE - s.scale(Interval::point(2.0)))
        .scale(half)
        .pow_base(base)?;
    let log_ratio = lngamma_complex((w + a).scale(half))? - lngamma_complex((s + a).scale(half))?;
    Ok(eps * prefactor * log_ratio.exp() * partner)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::{enumerate_all, enumerate_primitive};
    use crate::interval::PI_4;
    use crate::special::zeta_real;

    #[test]
    fn odd_quartic_line_values() {
        let chi = &enumerate_primitive(4, true)[0];
        let at_one = l_value(ComplexInterval::point(1.0, 0.0), chi).unwrap();
        assert!(at_one.re.intersect(*PI_4).is_some());
        assert!(at_one.im.contains_zero());
        assert!(at_one.re.width() < 1e-11);

        let catalan = Interval::with_radius(0.915_965_594_177_219_0, 1e-13);
        let at_two = l_value(ComplexInterval::point(2.0, 0.0), chi).unwrap();
        assert!(at_two.re.intersect(catalan).is_some());
    }

    #[test]
    fn principal_character_strips_euler_factors() {
        // mod 6 principal at s=2: zeta(2)(1 - 1/4)(1 - 1/9) = pi^2/9
        let chi = enumerate_all(6)
            .into_iter()
            .find(|c| c.is_principal())
            .unwrap();
        let v = l_value(ComplexInterval::point(2.0, 0.0), &chi).unwrap();
        let target = PI.sqr() / 9.0;
        assert!(v.re.intersect(target).is_some());
        assert!(v.im.contains_zero());
    }

    #[test]
    fn euler_bounds_pinch_the_modulus() {
        let s = ComplexInterval::point(2.0, 5.0);
        let upper = zeta_real(Interval::point(2.0)).unwrap();
        let lower = zeta_real(Interval::point(4.0)).unwrap() / upper;
        for q in [5u64, 7, 11, 29] {
            for chi in enumerate_primitive(q, true) {
                let m = l_value(s, &chi).unwrap().abs();
                assert!(m.hi() >= lower.lo(), "q={q} {}", chi.label());
                assert!(m.lo() <= upper.hi(), "q={q} {}", chi.label());
            }
        }
    }

    #[test]
    fn functional_equation_residual_straddles_zero() {
        for (q, s) in [
            (3u64, ComplexInterval::point(0.4, 0.9)),
            (5, ComplexInterval::point(0.7, 1.3)),
            (8, ComplexInterval::point(1.2, -0.4)),
        ] {
            for chi in enumerate_primitive(q, false) {
                let r = functional_equation_residual(s, &chi).unwrap();
                assert!(r.contains_zero(), "q={q} {}", chi.label());
                assert!(r.abs().hi() < 1e-4, "q={q} {} gives {r}", chi.label());
            }
        }
    }

    #[test]
    fn reflection_agrees_with_direct_continuation() {
        let s = ComplexInterval::point(0.3, 2.0);
        for chi in enumerate_primitive(7, false) {
            let direct = l_value(s, &chi).unwrap();
            let via_fe = l_value_reflected(s, &chi).unwrap();
            assert!((direct - via_fe).contains_zero(), "{}", chi.label());
            assert!(via_fe.abs().width() < 1e-4);
        }
        assert!(l_value_reflected(ComplexInterval::point(0.6, 1.0), &enumerate_primitive(7, true)[0]).is_err());
    }
}
