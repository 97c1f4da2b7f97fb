//! Certifies, over a finite scale range, that the fully assembled per-term
//! bound on |N - main| stays below the closed-form linear bound
//! 0.22737 ell + 2 log(1 + ell) - 0.5 for every height T >= 5/7 and both
//! parities at once. Heights are compactified through u = 1/(T + 2), so the
//! search domain is the rectangle [ell_lo, ell_hi] x [0, 7/19] and T = +inf
//! is the ordinary edge u = 0.

use std::cell::RefCell;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::interval::{Interval, PI};
use crate::prover::{prove_upper_bound, IntervalBox, ProofOutcome};
use crate::special::log_zeta;

use super::assemble::theorem_radius;
use super::ftheta::FContext;
use super::jensen::{chain_parts, chain_preconditions};
use super::params::{derived, eta_of, large_disk, middle_disk, BoundMode, ThetaNodes};

const LARGE_FLOOR: f64 = 27.02;
const MIDDLE_FLOOR: f64 = 5.98;
const MIDDLE_CEIL: f64 = 28.0;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum RegimeKind {
    Large,
    Middle,
}

/// The height-independent ingredients of the assembled bound for one scale
/// box and one regime map.
#[derive(Clone, Copy)]
struct Bundle {
    chain_t_free: Interval,
    chain_u_coeff: Interval,
    s_const: Interval,
    log_rho: Interval,
    zeta_term: Interval,
    delta: Interval,
}

fn make_bundle(kind: RegimeKind, ell: Interval) -> Result<Bundle> {
    let (c, r) = match kind {
        RegimeKind::Large => large_disk(ell),
        RegimeKind::Middle => middle_disk(ell),
    };
    let eta = eta_of(ell);
    let (sigma1, delta) = derived(BoundMode::Simple, c, r);

    // Pairing-argument hypotheses (simple mode).
    if c.lo() <= 1.0 || (r - c).lo() <= 0.0 || delta.lo() < 0.0 || delta.hi() >= 4.5 {
        return Err(Error::precondition("pairing hypotheses fail on this box"));
    }
    // Counting-sum hypotheses.
    if (c - r).hi() >= 0.5 || (sigma1 - c).lo() <= 0.0 || (c + r - sigma1).lo() <= 0.0 {
        return Err(Error::precondition("counting-sum hypotheses fail on this box"));
    }
    let nodes = ThetaNodes::from_disk(c, r, eta)?;
    let failed = chain_preconditions(c, r, eta, &nodes);
    if !failed.is_empty() {
        return Err(Error::precondition(failed.join("; ")));
    }

    // The chain's kappa terms never involve the height; any admissible
    // height works for the context.
    let ctx = FContext::new(c, r, Interval::from_ratio(5, 7), eta, ell)?;
    let parts = chain_parts(&ctx, &nodes, 64, 24)?;

    Ok(Bundle {
        chain_t_free: parts.t_free,
        chain_u_coeff: parts.u_coeff,
        s_const: log_zeta(c)? - log_zeta(c * 2.0)?,
        log_rho: (r.checked_div(c - 0.5)?).ln()?,
        zeta_term: log_zeta(sigma1)? * 2.0 / *PI,
        delta,
    })
}

/// Bound on the Stirling remainder magnitude, (2 - a)/(50 T), rewritten in
/// u; worst parity is a = 0.
fn stirling_term(u: Interval) -> Result<Interval> {
    (u * 2.0).checked_div((Interval::ONE - u * 2.0) * 50.0)
}

/// Polynomial majorant of E/pi, valid for window widths d in [1/4, 5/8]
/// and T >= 5/7.
fn e_over_pi_majorant(a: u8, d: Interval, u: Interval) -> Result<Interval> {
    if d.lo() < 0.25 || d.hi() > 0.625 {
        return Err(Error::precondition(format!(
            "window width {d} outside [1/4, 5/8] where the majorant holds"
        )));
    }
    let aa = a as f64;
    let num = (d * (640.0 + 216.0 * aa) - 112.0 - 39.0 * aa) * u;
    let den = (Interval::point(3.0) - u * (7.0 - 3.0 * aa)) * 1536.0;
    Ok(num.checked_div(den)? + Interval::from_ratio(1, 1024))
}

fn lhs_from_bundle(b: &Bundle, u: Interval) -> Result<Interval> {
    let g = stirling_term(u)?;
    let e = e_over_pi_majorant(0, b.delta, u)?.max_i(e_over_pi_majorant(1, b.delta, u)?);
    let chain = b.chain_t_free + b.chain_u_coeff * u;
    let s_bound = b.s_const + chain / *PI;
    Ok(g + b.zeta_term + e + s_bound.checked_div(b.log_rho)?)
}

pub fn verify_assembly(ell_lo: f64, ell_hi: f64) -> Result<ProofOutcome> {
    verify_assembly_with(ell_lo, ell_hi, 400_000)
}

pub fn verify_assembly_with(ell_lo: f64, ell_hi: f64, budget: u64) -> Result<ProofOutcome> {
    if !(ell_lo >= MIDDLE_FLOOR) || !(ell_hi > ell_lo) || !ell_hi.is_finite() {
        return Err(Error::domain(format!(
            "scale range must satisfy {MIDDLE_FLOOR} <= lo < hi < inf, got [{ell_lo}, {ell_hi}]"
        )));
    }
    let cache: RefCell<HashMap<(u64, u64, RegimeKind), Option<Bundle>>> =
        RefCell::new(HashMap::new());
    let bundle_for = |kind: RegimeKind, ell: Interval| -> Option<Bundle> {
        let key = (ell.lo().to_bits(), ell.hi().to_bits(), kind);
        if let Some(hit) = cache.borrow().get(&key) {
            return *hit;
        }
        let made = make_bundle(kind, ell).ok();
        cache.borrow_mut().insert(key, made);
        made
    };

    let lhs = move |bx: &IntervalBox| -> Result<Interval> {
        let ell = bx.dim(0);
        let u = bx.dim(1);
        let mut best: Option<Interval> = None;
        if ell.lo() >= LARGE_FLOOR {
            if let Some(b) = bundle_for(RegimeKind::Large, ell) {
                let v = lhs_from_bundle(&b, u)?;
                best = Some(v);
            }
        }
        if ell.lo() >= MIDDLE_FLOOR && ell.hi() <= MIDDLE_CEIL {
            if let Some(b) = bundle_for(RegimeKind::Middle, ell) {
                let v = lhs_from_bundle(&b, u)?;
                best = Some(match best {
                    Some(old) if old.hi() <= v.hi() => old,
                    _ => v,
                });
            }
        }
        best.ok_or_else(|| {
            Error::precondition("no regime map covers this scale box; needs splitting")
        })
    };
    let rhs = |bx: &IntervalBox| -> Result<Interval> { theorem_radius(bx.dim(0)) };

    let domain = IntervalBox::new(vec![
        Interval::new(ell_lo, ell_hi),
        Interval::new(0.0, Interval::from_ratio(7, 19).hi()),
    ]);
    Ok(prove_upper_bound(lhs, rhs, &domain, budget))
}
