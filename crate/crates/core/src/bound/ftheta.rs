//! The boundary comparison function F on the circle |s - c| = r. On the
//! right of the strip it is log zeta(sigma); across the strip and to the
//! left it is the log of the magnitude majorant, split into a scale part
//! (a multiple of ell) and trigonometric correction terms L_j that stay
//! bounded as the modulus grows.

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::lfunc::majorant::nearest_toward_zero;
use crate::special::log_zeta;

use super::params::BoundParams;

const MAX_SPLIT_DEPTH: u32 = 12;

#[derive(Clone, Debug)]
pub struct FContext {
    pub c: Interval,
    pub r: Interval,
    pub t: Interval,
    pub eta: Interval,
    pub ell: Interval,
    lz_eta: Interval,
}

impl FContext {
    pub fn new(
        c: Interval,
        r: Interval,
        t: Interval,
        eta: Interval,
        ell: Interval,
    ) -> Result<FContext> {
        if r.lo() <= 0.0 {
            return Err(Error::domain("radius must be positive"));
        }
        if eta.lo() <= 0.0 || eta.hi() > 0.5 {
            return Err(Error::domain("eta must lie in (0, 1/2]"));
        }
        super::params::check_height(t)?;
        let lz_eta = log_zeta(eta + 1.0)?;
        Ok(FContext { c, r, t, eta, ell, lz_eta })
    }

    pub fn from_params(p: &BoundParams) -> Result<FContext> {
        FContext::new(p.c, p.r, p.t, p.eta, p.ell)
    }

    pub fn log_zeta_one_plus_eta(&self) -> Interval {
        self.lz_eta
    }

    /// log of ((j + sigma)^2 + (|t| + T)^2) / (T+2)^2 on the circle point
    /// at angle theta.
    pub fn l_j(&self, j: i64, theta: Interval) -> Result<Interval> {
        let x = self.c + self.r * theta.cos() + j as f64;
        let s = (self.r * theta.sin()).abs_i() + self.t;
        let num = x.sqr() + s.sqr();
        let den = (self.t + 2.0).sqr();
        num.checked_div(den)?.ln()
    }

    /// Height-free majorant of (T+2) * L_j, valid for theta in [0, pi] and
    /// T >= 5/7.
    pub fn l_j_star(&self, j: i64, theta: Interval) -> Interval {
        let x = self.c + self.r * theta.cos() + j as f64;
        let s = self.r * theta.sin();
        s * 2.0 - 4.0 + (x.sqr() + (s - 2.0).sqr()) * Interval::from_ratio(7, 19)
    }

    /// F at the circle angle theta. Even in theta; callers integrate over
    /// [0, pi].
    pub fn f(&self, theta: Interval) -> Result<Interval> {
        self.f_rec(theta, 0)
    }

    fn f_rec(&self, theta: Interval, depth: u32) -> Result<Interval> {
        let sigma = self.c + self.r * theta.cos();
        let upper = self.eta + 1.0;
        let lower = -self.eta;

        let can_right = sigma.hi() >= upper.lo();
        let can_mid = sigma.lo() <= upper.hi() && sigma.hi() >= lower.lo();
        let can_left = sigma.lo() < lower.hi();
        let left_cells = if can_left {
            let lo = sigma.lo();
            let hi = sigma.hi().min(lower.hi());
            (nearest_toward_zero(lo), nearest_toward_zero(hi))
        } else {
            (0, 0)
        };
        let branches =
            usize::from(can_right) + usize::from(can_mid) + usize::from(can_left);
        let split_cells = can_left && left_cells.0 != left_cells.1;

        if (branches > 1 || split_cells) && depth < MAX_SPLIT_DEPTH && !theta_atomic(theta) {
            let mid = theta.mid();
            let a = self.f_rec(Interval::new(theta.lo(), mid), depth + 1)?;
            let b = self.f_rec(Interval::new(mid, theta.hi()), depth + 1)?;
            return Ok(a.hull(b));
        }

        let mut out: Option<Interval> = None;
        let mut push = |v: Interval| {
            out = Some(match out {
                Some(acc) => acc.hull(v),
                None => v,
            });
        };
        if can_right {
            push(self.branch_right(sigma)?);
        }
        if can_mid {
            push(self.branch_mid(sigma, theta)?);
        }
        if can_left {
            for m in left_cells.0..=left_cells.1 {
                push(self.branch_left(sigma, theta, m)?);
            }
        }
        out.ok_or_else(|| Error::domain("angle produced no admissible branch"))
    }

    fn branch_right(&self, sigma: Interval) -> Result<Interval> {
        log_zeta(sigma.max_i(self.eta + 1.0))
    }

    fn branch_mid(&self, sigma: Interval, theta: Interval) -> Result<Interval> {
        let upper = self.eta + 1.0;
        let s = sigma.max_i(-self.eta).min_i(upper);
        let gap = upper - s;
        Ok(self.lz_eta + gap * self.ell * 0.5 + gap * self.l_j(1, theta)? * 0.25)
    }

    fn branch_left(&self, sigma: Interval, theta: Interval, m: i64) -> Result<Interval> {
        // Clamp sigma to the rounding cell [m - 1/2, m + 1/2] intersected
        // with the branch region sigma <= -eta.
        let s = sigma
            .max_i(Interval::from_ratio(2 * m - 1, 2))
            .min_i(Interval::from_ratio(2 * m + 1, 2))
            .min_i(-self.eta);
        let one_minus = Interval::ONE - s;
        let mut v = log_zeta(one_minus)? + (one_minus - s) * self.ell * 0.5;
        v = v + (Interval::ONE - s * 2.0 + 2.0 * m as f64) * self.l_j(1 - m, theta)? * 0.25;
        for k in 1..=(-m) {
            v = v + self.l_j(k - 1, theta)? * 0.5;
        }
        Ok(v)
    }
}

fn theta_atomic(theta: Interval) -> bool {
    let mid = theta.mid();
    mid <= theta.lo() || mid >= theta.hi()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::{PI, TWO_PI};

    fn figure_context() -> FContext {
        // c = 1.2, r = 1.9, T = 1, q = 10^6, eta = 0.141.
        let q = 1_000_000.0;
        let t = Interval::ONE;
        let ell = ((Interval::point(q) * (t + 2.0)) / *TWO_PI).ln().unwrap();
        FContext::new(
            Interval::from_ratio(6, 5),
            Interval::from_ratio(19, 10),
            t,
            Interval::from_ratio(141, 1000),
            ell,
        )
        .unwrap()
    }

    #[test]
    fn right_edge_is_log_zeta_at_c_plus_r() {
        let ctx = figure_context();
        let v = ctx.f(Interval::ZERO).unwrap();
        let lz = log_zeta(Interval::from_ratio(31, 10)).unwrap();
        assert!(v.intersect(lz).is_some(), "{v} vs {lz}");
        assert!(v.width() < 1e-10);
    }

    #[test]
    fn is_even_in_theta() {
        let ctx = figure_context();
        for k in 1..20 {
            let th = Interval::point(k as f64 * 0.16);
            let plus = ctx.f(th).unwrap();
            let minus = ctx.f(-th).unwrap();
            assert!(
                plus.intersect(minus).is_some(),
                "theta {th}: {plus} vs {minus}"
            );
        }
    }

    #[test]
    fn narrows_across_branch_boundaries() {
        let ctx = figure_context();
        //

        // theta where sigma = 1 + eta: the box straddles the right/middle
        // boundary, and splitting must still give a tight enclosure.
        let boundary = ((Interval::from_ratio(141, 1000) + 1.0 - ctx.c) / ctx.r)
            .acos()
            .unwrap();
        let th = Interval::with_radius(boundary.mid(), 1e-4);
        let v = ctx.f(th).unwrap();
        assert!(v.width() < 0.05, "enclosure too loose: {v}");
        // Continuity: values just left and just right agree to first order.
        let l = ctx.f(Interval::point(boundary.mid() - 1e-7)).unwrap();
        let r = ctx.f(Interval::point(boundary.mid() + 1e-7)).unwrap();
        assert!((l.mid() - r.mid()).abs() < 1e-4, "{l} vs {r}");
    }

    #[test]
    fn left_edge_matches_hand_computation() {
        let ctx = figure_context();
        let v = ctx.f(*PI).unwrap();
        // sigma = -0.7, cell m = -1: log zeta(1.7) + (2.4/2) ell
        //   + ((1 + 1.4 - 2)/4) L_2(pi) + (1/2) L_0(pi).
        let sigma = Interval::from_ratio(-7, 10);
        let lz = log_zeta(Interval::ONE - sigma).unwrap();
        let l2 = ctx.l_j(2, *PI).unwrap();
        let l0 = ctx.l_j(0, *PI).unwrap();
        let expect = lz
            + (Interval::ONE - sigma * 2.0) * ctx.ell * 0.5
            + (Interval::ONE - sigma * 2.0 - 2.0) * l2 * 0.25
            + l0 * 0.5;
        assert!(v.intersect(expect).is_some(), "{v} vs {expect}");
    }

    #[test]
    fn star_dominates_scaled_l_on_upper_half() {
        let ctx = figure_context();
        for j in 0..4i64 {
            for k in 0..=16 {
                let th = Interval::point(k as f64 * PI.lo() / 16.0);
                let lhs = ctx.l_j(j, th).unwrap() * (ctx.t + 2.0);
                let rhs = ctx.l_j_star(j, th);
                assert!(
                    lhs.lo() <= rhs.hi() + 1e-12,
                    "j={j} theta={th}: {lhs} vs {rhs}"
                );
            }
        }
    }
}
