//! The pieces of the decomposed boundary integral: one closed-form area
//! term, two trapezoid sums over log zeta, and a family of closed-form trig
//! integrals of the height-free majorant terms. All are independent of the
//! height T; the closed-form family enters the final bound divided by T + 2.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::interval::{Interval, PI};
use crate::special::log_zeta;

use super::ftheta::FContext;
use super::params::ThetaNodes;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KappaSet {
    pub k1: Interval,
    pub k2: Interval,
    pub k3: Interval,
    pub k4: Interval,
    pub k5: Interval,
    /// Entry i is the term for j = i + 1; the list stops where the
    /// integration range collapses to the left edge of the disk.
    pub k6: Vec<Interval>,
}

impl KappaSet {
    pub fn k6_total(&self) -> Interval {
        self.k6
            .iter()
            .fold(Interval::ZERO, |acc, v| acc + *v)
    }
}

/// Coefficients of a majorant term written as alpha + beta cos(theta)
/// + gamma sin(theta).
struct Star {
    alpha: Interval,
    beta: Interval,
    gamma: Interval,
}

impl Star {
    fn new(shift: i64, c: Interval, r: Interval) -> Self {
        let seven19 = Interval::from_ratio(7, 19);
        let jc = c + shift as f64;
        Star {
            alpha: seven19 * (jc.sqr() + r.sqr() + 4.0) - 4.0,
            beta: seven19 * jc * r * 2.0,
            gamma: Interval::from_ratio(10, 19) * r,
        }
    }
}

/// Integrals over [u, v] of 1, cos, sin, cos^2, and sin*cos.
struct Moments {
    one: Interval,
    cos: Interval,
    sin: Interval,
    cos2: Interval,
    sincos: Interval,
}

impl Moments {
    fn new(u: Interval, v: Interval) -> Self {
        Moments {
            one: v - u,
            cos: v.sin() - u.sin(),
            sin: u.cos() - v.cos(),
            cos2: (v - u) * 0.5 + ((v * 2.0).sin() - (u * 2.0).sin()) * 0.25,
            sincos: (v.sin().sqr() - u.sin().sqr()) * 0.5,
        }
    }
}

/// Integral of (p0 + p1 cos(theta)) * star(theta) against the moments.
fn linear_times_star(p0: Interval, p1: Interval, s: &Star, m: &Moments) -> Interval {
    p0 * s.alpha * m.one
        + (p0 * s.beta + p1 * s.alpha) * m.cos
        + p0 * s.gamma * m.sin
        + p1 * s.beta * m.cos2
        + p1 * s.gamma * m.sincos
}

pub fn compute_kappas(ctx: &FContext, nodes: &ThetaNodes, j1: u32, j2: u32) -> Result<KappaSet> {
    let c = ctx.c;
    let r = ctx.r;
    let eta = ctx.eta;

    let th_up = nodes.one_plus_eta;
    let th_dn = nodes.minus_eta;

    let k1 = (th_dn - th_up) * (eta + 1.0 - c) * 0.5 - (*PI - th_dn) * (c - 0.5)
        + r * (th_dn.sin() + th_up.sin()) * 0.5;

    // Trapezoid over [0, pi/2] in theta for the right-of-strip integral,
    // with the theta = pi/2 endpoint value carried separately by the caller.
    let mut sum2 = log_zeta(c + r)?;
    for j in 1..j1 {
        let angle = *PI * Interval::from_ratio(j as i64, 2 * j1 as i64);
        sum2 = sum2 + log_zeta(c + r * angle.cos())? * 2.0;
    }
    let k2 = sum2 * *PI * Interval::from_ratio(1, 4 * j1 as i64);

    // Trapezoid over [theta_{1-c}, pi] for the reflected integral; the left
    // endpoint value log zeta(c) is again carried separately.
    let th_ref = nodes.one_minus_c;
    let span = *PI - th_ref;
    let mut sum3 = log_zeta(Interval::ONE - c + r)?;
    for j in 1..j2 {
        let angle = th_ref + span * Interval::from_ratio(j as i64, j2 as i64);
        sum3 = sum3 + log_zeta(Interval::ONE - c - r * angle.cos())? * 2.0;
    }
    let k3 = sum3 * span * Interval::from_ratio(1, 2 * j2 as i64);

    let star1 = Star::new(1, c, r);

    let k4 = {
        let m = Moments::new(th_up, th_dn);
        linear_times_star(eta + 1.0 - c, -r, &star1, &m) * 0.25
    };

    let k5 = {
        let m = Moments::new(th_dn, nodes.half_node(1));
        linear_times_star(Interval::ONE - c * 2.0, -r * 2.0, &star1, &m) * 0.25
    };

    let mut k6 = Vec::new();
    for j in 1i64.. {
        let lo = nodes.half_node(j as usize);
        if lo.lo() >= PI.lo() && lo.hi() >= PI.hi() {
            break;
        }
        let hi = nodes.half_node(j as usize + 1);
        let m = Moments::new(lo, hi);
        let lin = linear_times_star(
            Interval::ONE - c * 2.0 - 2.0 * j as f64,
            -r * 2.0,
            &Star::new(j + 1, c, r),
            &m,
        );
        // The companion sum of lower-index majorants, integrated termwise.
        let mut sum_alpha = Interval::ZERO;
        let mut sum_beta = Interval::ZERO;
        for k in 1..=j {
            let s = Star::new(k - 1, c, r);
            sum_alpha = sum_alpha + s.alpha;
            sum_beta = sum_beta + s.beta;
        }
        let gamma = Interval::from_ratio(10, 19) * r * j as f64;
        let companions = sum_alpha * m.one + sum_beta * m.cos + gamma * m.sin;
        k6.push((lin + companions * 2.0) * 0.25);
    }

    Ok(KappaSet { k1, k2, k3, k4, k5, k6 })
}
