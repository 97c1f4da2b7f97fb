//! Upper bound for the averaged log-magnitude integral over the disk
//! boundary, and the zero-counting sum limit it controls. The decomposed
//! chain of closed forms and trapezoid sums is used whenever its
//! inequalities hold; otherwise the integral of F is enclosed directly by
//! adaptive quadrature, which is always available but slower and blunter.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::{Interval, PI};
use crate::special::log_zeta;

use super::ftheta::FContext;
use super::kappa::{compute_kappas, KappaSet};
use super::params::{BoundParams, ThetaNodes};
use super::quad::integrate;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum JensenPath {
    LemmaChain,
    DirectQuadrature,
}

#[derive(Clone, Debug)]
pub struct JensenOutcome {
    /// Encloses a quantity that dominates the integral of F over [0, pi].
    /// On the direct path this is a two-sided enclosure of the integral
    /// itself.
    pub bound: Interval,
    pub path: JensenPath,
    pub kappas: Option<KappaSet>,
}

pub fn jensen_integral(p: &BoundParams) -> Result<JensenOutcome> {
    jensen_integral_with(p, 5e-4, 4_000_000)
}

/// `tol` and `budget` steer the adaptive quadrature of the direct path; the
/// chain is made of closed forms and finite sums and ignores them.
pub fn jensen_integral_with(p: &BoundParams, tol: f64, budget: u64) -> Result<JensenOutcome> {
    let ctx = FContext::from_params(p)?;
    let nodes = ThetaNodes::build(p)?;
    let mut failed = chain_preconditions(p.c, p.r, p.eta, &nodes);
    if p.q < 3 {
        failed.push(format!("q >= 3 (q = {})", p.q));
    }
    if failed.is_empty() {
        let parts = chain_parts(&ctx, &nodes, p.j1, p.j2)?;
        let chain = parts.t_free + parts.u_coeff / (p.t + 2.0);
        // Both routes are valid here; keep the smaller upper bound. When
        // the quadrature cannot finish within budget the chain stands.
        if let Ok(direct) = f_integral(&ctx, tol, budget) {
            if direct.hi() < chain.hi() {
                return Ok(JensenOutcome {
                    bound: direct,
                    path: JensenPath::DirectQuadrature,
                    kappas: Some(parts.kappas),
                });
            }
        }
        return Ok(JensenOutcome {
            bound: chain,
            path: JensenPath::LemmaChain,
            kappas: Some(parts.kappas),
        });
    }
    Ok(JensenOutcome {
        bound: f_integral(&ctx, tol, budget)?,
        path: JensenPath::DirectQuadrature,
        kappas: None,
    })
}

/// Two-sided enclosure of the integral of F over [0, pi] by adaptive
/// quadrature.
pub fn f_integral(ctx: &FContext, tol: f64, budget: u64) -> Result<Interval> {
    let f = |theta: Interval| ctx.f(theta);
    Ok(integrate(&f, Interval::ZERO, *PI, tol, budget)?.value)
}

/// The inequalities the decomposed chain needs, as human-readable items;
/// empty when the chain applies.
pub fn chain_preconditions(
    c: Interval,
    r: Interval,
    eta: Interval,
    nodes: &ThetaNodes,
) -> Vec<String> {
    let mut failed = Vec::new();
    if (eta + 1.0).hi() > c.lo() {
        failed.push(format!("1 + eta <= c (eta = {eta}, c = {c})"));
    }
    if c.hi() >= (r - eta).lo() {
        failed.push(format!("c < r - eta (c = {c}, r = {r})"));
    }
    if nodes.one_plus_eta.hi() > 2.1 {
        failed.push(format!(
            "crossing angle at 1 + eta <= 2.1 (got {})",
            nodes.one_plus_eta
        ));
    }
    if r.lo() <= (c * 2.0 - 1.0).hi() {
        failed.push(format!("r > 2c - 1 (c = {c}, r = {r})"));
    }
    failed
}

pub(crate) struct ChainParts {
    /// Everything in the chain that does not involve the height.
    pub t_free: Interval,
    /// The coefficient of 1/(T+2).
    pub u_coeff: Interval,
    pub kappas: KappaSet,
}

pub(crate) fn chain_parts(
    ctx: &FContext,
    nodes: &ThetaNodes,
    j1: u32,
    j2: u32,
) -> Result<ChainParts> {
    let kappas = compute_kappas(ctx, nodes, j1, j2)?;
    let lz_eta = ctx.log_zeta_one_plus_eta();
    let lz_c = log_zeta(ctx.c)?;
    let th_up = nodes.one_plus_eta;
    let th_dn = nodes.minus_eta;
    let th_ref = nodes.one_minus_c;

    // Right-of-strip piece: trapezoid over [0, pi/2] extended linearly to
    // the strip edge.
    let right = (lz_eta + lz_c) * 0.5 * (th_up - *PI * 0.5)
        + lz_c * *PI * Interval::from_ratio(1, 4 * j1 as i64)
        + kappas.k2;
    // Reflected piece: same structure on [theta at 1-c, pi].
    let reflected = (lz_eta + lz_c) * 0.5 * (th_ref - th_dn)
        + lz_c * (*PI - th_ref) * Interval::from_ratio(1, 2 * j2 as i64)
        + kappas.k3;

    let t_free = kappas.k1 * ctx.ell + (th_dn - th_up) * lz_eta + right + reflected;
    let u_coeff = kappas.k4 + kappas.k5 + kappas.k6_total();
    Ok(ChainParts { t_free, u_coeff, kappas })
}

/// Upper bound for the limiting zero-counting sum on the disk:
/// log(zeta(c)/zeta(2c)) plus the boundary integral divided by pi.
pub fn s_limit_bound(p: &BoundParams, jensen: &JensenOutcome) -> Result<Interval> {
    let mut failed = Vec::new();
    if (p.c - p.r).hi() >= 0.5 {
        failed.push(format!("c - r < 1/2 (c = {}, r = {})", p.c, p.r));
    }
    if p.c.lo() <= 1.0 {
        failed.push(format!("c > 1 (c = {})", p.c));
    }
    if (p.sigma1 - p.c).lo() <= 0.0 {
        failed.push(format!("sigma_1 > c (sigma_1 = {})", p.sigma1));
    }
    if (p.c + p.r - p.sigma1).lo() <= 0.0 {
        failed.push(format!("sigma_1 < c + r (sigma_1 = {})", p.sigma1));
    }
    if !failed.is_empty() {
        return Err(Error::precondition(failed.join("; ")));
    }
    Ok(log_zeta(p.c)? - log_zeta(p.c * 2.0)? + jensen.bound / *PI)
}
