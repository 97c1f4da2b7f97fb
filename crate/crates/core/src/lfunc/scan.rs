//! Grid-and-bisection zero scanning on the critical line, certified
//! complete against the argument-principle count.

use crate::characters::DirichletCharacter;
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::lfunc::argcount::arg_principal_count_banked;
use crate::lfunc::hardy::hardy_z_banked;
use crate::lfunc::hurwitz::HurwitzBank;

const METHOD: &str = "line-sign-change";
const GRID_REFINEMENTS: u32 = 4;

#[derive(Clone, Debug)]
pub struct ZeroRecord {
    pub character_label: String,
    pub modulus: u64,
    pub parity: u8,
    /// Enclosure of the ordinate; endpoints carry certified opposite signs.
    pub ordinate: Interval,
    pub method: String,
    pub isolation_width: f64,
}

#[derive(Clone, Debug)]
pub struct ScanOutcome {
    pub records: Vec<ZeroRecord>,
    /// Zeros with |ordinate| <= t_used according to the argument principle.
    pub certified_count: u64,
    pub t_used: f64,
    pub grid_refinements: u32,
}

fn definite_sign(z: Interval) -> Option<i8> {
    if z.lo() > 0.0 {
        Some(1)
    } else if z.hi() < 0.0 {
        Some(-1)
    } else {
        None
    }
}

/// Sign of the line value at t, sliding the probe slightly when the first
/// enclosure straddles zero.
fn probed_sign(
    t: f64,
    jig: f64,
    chi: &DirichletCharacter,
    bank: &HurwitzBank,
) -> Result<Option<(f64, i8)>> {
    for candidate in [t, t + jig, t - jig] {
        if candidate <= 0.0 {
            continue;
        }
        let z = hardy_z_banked(Interval::point(candidate), chi, bank)?;
        if let Some(s) = definite_sign(z) {
            return Ok(Some((candidate, s)));
        }
    }
    Ok(None)
}

fn bisect(
    mut lo: f64,
    mut hi: f64,
    sign_lo: i8,
    tol: f64,
    chi: &DirichletCharacter,
    bank: &HurwitzBank,
) -> Result<Interval> {
    const FRACTIONS: [f64; 5] = [0.5, 0.382, 0.618, 0.44, 0.56];
    while hi - lo > tol {
        let mut moved = false;
        for f in FRACTIONS {
            let m = lo + f * (hi - lo);
            let z = hardy_z_banked(Interval::point(m), chi, bank)?;
            if let Some(s) = definite_sign(z) {
                if s == sign_lo {
                    lo = m;
                } else {
                    hi = m;
                }
                moved = true;
                break;
            }
        }
        if !moved {
            break;
        }
    }
    Ok(Interval::new(lo, hi))
}

/// Positive-ordinate brackets for the given character, one per detected
/// sign change of the line value on (0, t_hi].
fn positive_side(
    chi: &DirichletCharacter,
    t_hi: f64,
    step: f64,
    tol: f64,
    bank: &HurwitzBank,
) -> Result<Vec<Interval>> {
    let mut edges = vec![step / 8.0];
    let mut k = 1u64;
    while k as f64 * step < t_hi {
        edges.push(k as f64 * step);
        k += 1;
    }
    edges.push(t_hi);

    let jig = step / 32.0;
    let mut zeros = Vec::new();
    let mut prev: Option<(f64, i8)> = None;
    for edge in edges {
        let Some((te, s)) = probed_sign(edge, jig, chi, bank)? else {
            continue;
        };
        if let Some((tp, sp)) = prev {
            if sp != s {
                zeros.push(bisect(tp, te, sp, tol, chi, bank)?);
            }
        }
        prev = Some((te, s));
    }
    Ok(zeros)
}

/// Isolate every zero of L(1/2 + it, chi) with |t| <= t_max (nudged), and
/// certify completeness against the argument-principle count. Real
/// characters report only positive ordinates; their mirrors are implied.
pub fn scan_zeros(chi: &DirichletCharacter, t_max: f64, tol: f64) -> Result<ScanOutcome> {
    if !(t_max > 0.0 && tol > 0.0) {
        return Err(Error::domain(format!(
            "scan needs positive t_max and tolerance, got {t_max}, {tol}"
        )));
    }
    let meta = chi.meta();
    if !meta.is_primitive || chi.is_principal() {
        return Err(Error::NotPrimitive {
            conductor: meta.conductor,
            modulus: chi.modulus(),
        });
    }

    let bank = HurwitzBank::new(chi.modulus());
    let counted = arg_principal_count_banked(t_max, chi, &bank)?;
    let t_used = counted.t_used;
    let conj = chi.conjugate();

    let mut step = 0.05_f64.min(t_used / 8.0);
    let mut recorded = 0u64;
    for refinement in 0..=GRID_REFINEMENTS {
        let plus = positive_side(chi, t_used, step, tol, &bank)?;
        let minus = if meta.is_real {
            Vec::new()
        } else {
            positive_side(&conj, t_used, step, tol, &bank)?
        };
        recorded = if meta.is_real {
            2 * plus.len() as u64
        } else {
            (plus.len() + minus.len()) as u64
        };
        if recorded == counted.count {
            let mut records = Vec::new();
            for bracket in minus {
                records.push(ZeroRecord {
                    character_label: chi.label(),
                    modulus: chi.modulus(),
                    parity: meta.parity,
                    ordinate: Interval::new(-bracket.hi(), -bracket.lo()),
                    method: METHOD.to_string(),
                    isolation_width: bracket.width(),
                });
            }
            for bracket in plus {
                records.push(ZeroRecord {
                    character_label: chi.label(),
                    modulus: chi.modulus(),
                    parity: meta.parity,
                    ordinate: bracket,
                    method: METHOD.to_string(),
                    isolation_width: bracket.width(),
                });
            }
            records.sort_by(|a, b| a.ordinate.lo().total_cmp(&b.ordinate.lo()));
            return Ok(ScanOutcome {
                records,
                certified_count: counted.count,
                t_used,
                grid_refinements: refinement,
            });
        }
        step /= 2.0;
    }
    Err(Error::CompletenessFailure {
        certified: counted.count as i64,
        recorded: recorded as i64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::enumerate_primitive;
    use crate::lfunc::hardy::hardy_z;

    #[test]
    fn lowest_zero_of_the_quadratic_mod_three() {
        let chi = &enumerate_primitive(3, true)[0];
        let out = scan_zeros(chi, 9.0, 1e-9).unwrap();
        assert_eq!(out.certified_count, 2);
        assert_eq!(out.records.len(), 1);
        let z = &out.records[0];
        assert!(z.isolation_width <= 1.01e-9);
        assert!((z.ordinate.mid() - 8.039_737).abs() < 1e-3);

        // independent coarse bracketing of the same zero
        let a = hardy_z(Interval::point(8.0), chi).unwrap();
        let b = hardy_z(Interval::point(8.1), chi).unwrap();
        assert!((a.lo() > 0.0) != (b.lo() > 0.0));
        assert!(z.ordinate.lo() > 8.0 && z.ordinate.hi() < 8.1);
    }

    #[test]
    fn quartic_scan_is_complete_and_sorted() {
        let chi = &enumerate_primitive(5, true)[0];
        let out = scan_zeros(chi, 6.0, 1e-9).unwrap();
        assert_eq!(out.records.len() as u64, out.certified_count);
        assert!(!out.records.is_empty());
        for pair in out.records.windows(2) {
            assert!(pair[0].ordinate.lo() <= pair[1].ordinate.lo());
        }
        for r in &out.records {
            assert!(r.isolation_width <= 1.01e-9);
            assert_eq!(r.character_label, chi.label());
        }
    }
}
