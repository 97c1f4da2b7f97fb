//! The rotated line value: a real-valued function of t whose sign changes
//! locate zeros on the critical line.

use crate::characters::{gauss_root, DirichletCharacter};
use crate::complex::ComplexInterval;
use crate::error::{Error, Result};
use crate::interval::{Interval, PI};
use crate::lfunc::hurwitz::HurwitzBank;
use crate::lfunc::value::l_value_banked;
use crate::special::im_lngamma_refined;

fn require_primitive(chi: &DirichletCharacter) -> Result<()> {
    let meta = chi.meta();
    if !meta.is_primitive || chi.is_principal() {
        return Err(Error::NotPrimitive {
            conductor: meta.conductor,
            modulus: chi.modulus(),
        });
    }
    Ok(())
}

/// Z(t, chi) = eps^(-1/2) (q/pi)^(it/2) (Gamma/|Gamma|)((1/2+a+it)/2) L(1/2+it, chi),
/// evaluated as Re of the rotated product. The imaginary part must enclose
/// zero or the evaluation reports an inconsistency.
pub fn hardy_z(t: Interval, chi: &DirichletCharacter) -> Result<Interval> {
    let bank = HurwitzBank::new(chi.modulus());
    hardy_z_banked(t, chi, &bank)
}

pub fn hardy_z_banked(
    t: Interval,
    chi: &DirichletCharacter,
    bank: &HurwitzBank,
) -> Result<Interval> {
    require_primitive(chi)?;
    let meta = chi.meta();
    let (_, eps) = gauss_root(chi)?;
    let phase_eps = eps.arg_continuous()?;

    let x = Interval::from_ratio(1 + 2 * meta.parity as i64, 4);
    let half_t = t * Interval::from_ratio(1, 2);
    let gamma_phase = if t.lo() > 0.0 {
        im_lngamma_refined(x, half_t, 1e-12)?.value
    } else if t.hi() < 0.0 {
        -im_lngamma_refined(x, -half_t, 1e-12)?.value
    } else {
        return Err(Error::domain(format!(
            "line ordinate must exclude zero, got {t}"
        )));
    };

    let ln_q_pi = (Interval::point(chi.modulus() as f64) / *PI).ln()?;
    let phase = half_t * ln_q_pi + gamma_phase - phase_eps * Interval::from_ratio(1, 2);
    let s = ComplexInterval::new(Interval::from_ratio(1, 2), t);
    let rotated = ComplexInterval::unit_circle(phase) * l_value_banked(s, chi, bank)?;
    if !rotated.im.contains_zero() {
        return Err(Error::Inconsistency(format!(
            "rotated line value {rotated} misses the real axis at t={t}"
        )));
    }
    Ok(rotated.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::{enumerate_all, enumerate_primitive};
    use crate::lfunc::value::l_value;

    #[test]
    fn modulus_matches_line_value() {
        let chi = &enumerate_primitive(3, true)[0];
        let t = Interval::point(1.0);
        let z = hardy_z(t, chi).unwrap();
        let l = l_value(ComplexInterval::new(Interval::from_ratio(1, 2), t), chi).unwrap();
        assert!(z.abs_i().intersect(l.abs()).is_some());
        assert!(z.width() < 1e-9);
    }

    #[test]
    fn conjugate_reflects_the_ordinate() {
        for q in [5u64, 7] {
            let chi = &enumerate_primitive(q, true)[0];
            let plus = hardy_z(Interval::point(1.3), chi).unwrap();
            let minus = hardy_z(Interval::point(-1.3), &chi.conjugate()).unwrap();
            assert!(plus.intersect(minus).is_some(), "q={q}");
        }
    }

    #[test]
    fn induced_characters_are_refused() {
        let lifted = enumerate_all(9)
            .into_iter()
            .find(|c| !c.is_principal() && !c.meta().is_primitive)
            .unwrap();
        assert!(matches!(
            hardy_z(Interval::point(1.0), &lifted),
            Err(Error::NotPrimitive { conductor: 3, modulus: 9 })
        ));
    }
}
