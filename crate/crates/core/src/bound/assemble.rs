//! Puts the pieces together: an itemized, auditable bound report for the
//! zero count N(T, chi) of a primitive character of modulus q and parity a,
//! and the closed-form linear-in-ell bound with fixed constants.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::{Interval, E, PI, TWO_PI};
use crate::special::{g_of_refined, log_zeta};

use super::backlund::arg_segment_bound;
use super::jensen::{jensen_integral_with, s_limit_bound, JensenPath};
use super::kappa::KappaSet;
use super::params::{ell_main_term, scale_ell, smooth_main_term, BoundParams};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BoundReport {
    pub params: BoundParams,
    pub kappas: Option<KappaSet>,
    pub jensen_integral: Interval,
    pub jensen_path: JensenPath,
    pub s_bound: Interval,
    /// Bound on the arg L variation along the segment, before the 2/pi
    /// factor.
    pub arg_bound: Interval,
    pub e_delta: Interval,
    pub e_gap: Option<Interval>,
    /// (2/pi) log zeta(sigma_1).
    pub zeta_term: Interval,
    /// The exact first two terms of the counting identity:
    /// (T/pi) log(q/pi) + (2/pi) Im ln Gamma((1+2a)/4 + iT/2).
    pub smooth_main: Interval,
    /// The centered form (T/pi) log(qT/2pi e) - chi(-1)/4; differs from
    /// smooth_main by the Stirling remainder g_term.
    pub main_term: Interval,
    pub g_term: Interval,
    /// Two-sided deviation radius: |N - main_term| <= deviation.hi().
    pub deviation: Interval,
    /// One-sided ceiling: N <= total (built from smooth_main, so the
    /// Stirling remainder enters with its sign).
    pub total: Interval,
    pub floor_k: Option<u64>,
    pub floor_note: Option<String>,
}

pub fn assemble_n_bound(p: &BoundParams) -> Result<BoundReport> {
    assemble_n_bound_with(p, 5e-4, 4_000_000)
}

pub fn assemble_n_bound_with(p: &BoundParams, tol: f64, budget: u64) -> Result<BoundReport> {
    let smooth_main = smooth_main_term(p.q, p.t, p.a)?;
    let parity = if p.a == 0 { 1 } else { -1 };
    let (_, main_term) = ell_main_term(p.q, p.t, parity)?;
    let g_term = g_of_refined(p.a, p.t, 1e-12)?;

    let jensen = jensen_integral_with(p, tol, budget)?;
    let s_bound = s_limit_bound(p, &jensen)?;
    let arg = arg_segment_bound(p, s_bound)?;
    let zeta_term = log_zeta(p.sigma1)? * 2.0 / *PI;

    let spread = zeta_term + arg.total * 2.0 / *PI;
    let total = smooth_main + spread;
    let deviation = g_term.abs_i() + spread;

    let (floor_k, floor_note) = integer_floor(total);
    Ok(BoundReport {
        params: p.clone(),
        kappas: jensen.kappas.clone(),
        jensen_integral: jensen.bound,
        jensen_path: jensen.path,
        s_bound,
        arg_bound: arg.total,
        e_delta: arg.e_delta,
        e_gap: arg.e_gap,
        zeta_term,
        smooth_main,
        main_term,
        g_term,
        deviation,
        total,
        floor_k,
        floor_note,
    })
}

/// The rigorous integer ceiling for a real bound enclosure: emitted only
/// when both endpoints share a floor, so the exact bound value's floor is
/// pinned.
fn integer_floor(total: Interval) -> (Option<u64>, Option<String>) {
    if !total.is_finite() {
        return (None, Some("bound enclosure is unbounded".to_string()));
    }
    let lo = total.lo().floor();
    let hi = total.hi().floor();
    if lo == hi {
        let k = if hi < 0.0 { 0 } else { hi as u64 };
        (Some(k), None)
    } else {
        (
            None,
            Some(format!(
                "enclosure [{}, {}] straddles an integer; floor({}) = {} still bounds the count \
                 but the exact bound value is not pinned to one integer cell",
                total.lo(),
                total.hi(),
                total.hi(),
                hi
            )),
        )
    }
}

/// The linear-in-ell bound with fixed constants. For ell <= 1.567 the count
/// is zero outright; otherwise |N - main| <= radius with main the centered
/// main term (parity unknown: a quarter either way is absorbed into the
/// returned band).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TheoremBound {
    pub ell: Interval,
    /// (T/pi) log(qT/2pi e), before the parity quarter.
    pub main_center: Interval,
    pub radius: Interval,
    pub n_zero: bool,
    /// Certified bracket for N: lower <= N <= upper for every primitive
    /// character of modulus q and either parity.
    pub upper: f64,
    pub lower: f64,
}

pub fn theorem_radius(ell: Interval) -> Result<Interval> {
    Ok(ell * 0.22737 + (ell + 1.0).ln()? * 2.0 - 0.5)
}

/// The empirical-target radius ell / log(2 + ell); checked against scans,
/// not proved.
pub fn conjecture_radius(ell: Interval) -> Result<Interval> {
    ell.checked_div((ell + 2.0).ln()?)
}

pub fn theorem_bound(q: u64, t: Interval) -> Result<TheoremBound> {
    let ell = scale_ell(q, t)?;
    let log_term = ((Interval::point(q as f64) * t) / (*TWO_PI * *E)).ln()?;
    let main_center = t * log_term / *PI;
    if ell.hi() <= 1.567 {
        return Ok(TheoremBound {
            ell,
            main_center,
            radius: Interval::ZERO,
            n_zero: true,
            upper: 0.0,
            lower: 0.0,
        });
    }
    if ell.lo() <= 1.567 {
        return Err(Error::precondition(
            "scale enclosure straddles the zero-count cutoff 1.567; refine the inputs",
        ));
    }
    let radius = theorem_radius(ell)?;
    let upper = (main_center + 0.25 + radius).hi();
    let lower = ((main_center - 0.25 - radius).lo()).max(0.0);
    Ok(TheoremBound {
        ell,
        main_center,
        radius,
        n_zero: false,
        upper,
        lower,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use super::super::params::{select_params, Regime};
    use crate::interval::{E, TWO_PI};

    #[test]
    fn worked_example_full_assembly() {
        let p = select_params(25252, Interval::point(1.0), 0, Regime::Table { k: 7 }).unwrap();
        let rep = assemble_n_bound(&p).unwrap();
        assert!(rep.smooth_main.hi() <= 2.1013434 + 1e-3);
        assert!(rep.zeta_term.hi() <= 0.4883702 + 1e-3);
        assert!(rep.zeta_term.hi() >= 0.4883702 - 1e-3);
        assert!(
            rep.total.hi() <= 7.9997 + 1e-3,
            "total too large: {}",
            rep.total
        );
        assert!(rep.total.hi() >= 7.95, "total suspiciously small: {}", rep.total);
        assert_eq!(rep.floor_k, Some(7));
        assert!(rep.floor_note.is_none());
        // The two main-term forms describe the same identity up to the
        // Stirling remainder.
        let recomposed = rep.main_term + rep.g_term;
        assert!(recomposed.intersect(rep.smooth_main).is_some());
    }

    #[test]
    fn straddling_enclosures_withhold_the_floor() {
        let (k, note) = integer_floor(Interval::new(6.9, 7.1));
        assert_eq!(k, None);
        assert!(note.unwrap().contains("straddles"));
        let (k, note) = integer_floor(Interval::new(7.2, 7.9));
        assert_eq!(k, Some(7));
        assert!(note.is_none());
        let (k, _) = integer_floor(Interval::new(-0.8, -0.2));
        assert_eq!(k, Some(0));
    }

    #[test]
    fn linear_bound_at_the_cutoff_is_zero_count() {
        // q chosen so ell < 1.567 at T = 5/7: need q(T+2) < 2 pi e^1.567.
        let t = Interval::from_ratio(5, 7);
        let tb = theorem_bound(11, t).unwrap();
        assert!(tb.n_zero);
        assert_eq!(tb.upper, 0.0);
        let tb2 = theorem_bound(100, Interval::point(1.0)).unwrap();
        assert!(!tb2.n_zero);
        assert!(tb2.upper > tb2.lower);
        assert!(tb2.lower >= 0.0);
    }

    #[test]
    fn centered_main_straddles_quarter_at_the_balance_point() {
        let q = 17u64;
        let t = *TWO_PI * *E / Interval::point(q as f64);
        let tb = theorem_bound(q, t).unwrap();
        assert!(tb.main_center.contains(0.0));
    }
}
