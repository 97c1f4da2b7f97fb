//! Rigorous special functions: real zeta, the imaginary part of log Gamma
//! via a shifted Stirling approximation, the Gamma correction term g(a,T),
//! and the arctangent-sum majorant E(a,d,T).

mod e_bound;
mod gamma;
mod zeta;

pub use e_bound::{e_collapsed_at_zero, e_of};
pub use gamma::{
    g_of, g_of_refined, im_lngamma, im_lngamma_refined, lngamma_complex, StirlingEnclosure,
};
pub use zeta::{log_zeta, zeta_real};

use crate::interval::Interval;

/// Split an interval into pieces no wider than `max_width`, for controlling
/// dependency blowup in expressions that reuse a variable heavily.
pub(crate) fn subdivide(iv: Interval, max_width: f64) -> Vec<Interval> {
    let w = iv.width();
    if w <= max_width || !w.is_finite() {
        return vec![iv];
    }
    let n = (w / max_width).ceil().min(4096.0) as usize;
    let mut cuts = Vec::with_capacity(n + 1);
    cuts.push(iv.lo());
    for i in 1..n {
        cuts.push(iv.lo() + w * (i as f64) / (n as f64));
    }
    cuts.push(iv.hi());
    cuts.windows(2)
        .map(|p| Interval::new(p[0], p[1].max(p[0])))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subdivide_covers_and_chains() {
        let iv = Interval::new(0.0, 1.0);
        let parts = subdivide(iv, 0.26);
        assert_eq!(parts.len(), 4);
        assert_eq!(parts[0].lo(), 0.0);
        assert_eq!(parts.last().unwrap().hi(), 1.0);
        for w in parts.windows(2) {
            assert_eq!(w[0].hi(), w[1].lo());
        }
        assert_eq!(subdivide(iv, 2.0).len(), 1);
    }
}
