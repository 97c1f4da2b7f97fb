//! Rectangular complex interval arithmetic.
//!
//! A complex enclosure is a rectangle re x im. That is enough for the
//! L-function work: we track values along axis-parallel segments, where
//! rectangles stay reasonably tight.

use crate::error::{Error, Result};
use crate::interval::{Interval, PI, PI_2};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexInterval {
    pub re: Interval,
    pub im: Interval,
}

impl ComplexInterval {
    pub const ZERO: ComplexInterval = ComplexInterval {
        re: Interval::ZERO,
        im: Interval::ZERO,
    };
    pub const ONE: ComplexInterval = ComplexInterval {
        re: Interval::ONE,
        im: Interval::ZERO,
    };
    pub const I: ComplexInterval = ComplexInterval {
        re: Interval::ZERO,
        im: Interval::ONE,
    };

    pub fn new(re: Interval, im: Interval) -> ComplexInterval {
        ComplexInterval { re, im }
    }

    pub fn point(re: f64, im: f64) -> ComplexInterval {
        ComplexInterval {
            re: Interval::point(re),
            im: Interval::point(im),
        }
    }

    pub fn from_real(re: Interval) -> ComplexInterval {
        ComplexInterval {
            re,
            im: Interval::ZERO,
        }
    }

    pub fn conj(self) -> ComplexInterval {
        ComplexInterval {
            re: self.re,
            im: -self.im,
        }
    }

    pub fn mul_i(self) -> ComplexInterval {
        ComplexInterval {
            re: -self.im,
            im: self.re,
        }
    }

    pub fn scale(self, k: Interval) -> ComplexInterval {
        ComplexInterval {
            re: self.re * k,
            im: self.im * k,
        }
    }

    pub fn contains_zero(self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn contains_point(self, re: f64, im: f64) -> bool {
        self.re.contains(re) && self.im.contains(im)
    }

    pub fn abs_sqr(self) -> Interval {
        self.re.sqr() + self.im.sqr()
    }

    pub fn abs(self) -> Interval {
        self.abs_sqr().sqrt().expect("squares are nonnegative")
    }

    /// Widen both components outward by the given radius (e.g. to absorb a
    /// truncation error bound).
    pub fn pad(self, radius: f64) -> ComplexInterval {
        let r = Interval::new(-radius, radius);
        ComplexInterval {
            re: self.re + r,
            im: self.im + r,
        }
    }

    pub fn checked_div(self, rhs: ComplexInterval) -> Result<ComplexInterval> {
        let den = rhs.abs_sqr();
        if den.contains_zero() {
            return Err(Error::domain(format!(
                "complex division by {rhs} containing zero"
            )));
        }
        let num = self * rhs.conj();
        Ok(ComplexInterval {
            re: num.re / den,
            im: num.im / den,
        })
    }

    pub fn recip(self) -> Result<ComplexInterval> {
        ComplexInterval::ONE.checked_div(self)
    }

    pub fn exp(self) -> ComplexInterval {
        let r = self.re.exp();
        ComplexInterval {
            re: r * self.im.cos(),
            im: r * self.im.sin(),
        }
    }

    /// Principal logarithm for rectangles avoiding zero and the branch cut
    /// (i.e. not meeting the closed negative real axis).
    pub fn ln(self) -> Result<ComplexInterval> {
        if self.re.hi() <= 0.0 && self.im.contains_zero() {
            return Err(Error::domain(format!(
                "log of {self} meets the branch cut"
            )));
        }
        let modulus = self.abs();
        if modulus.lo() <= 0.0 {
            return Err(Error::domain(format!("log of {self} containing zero")));
        }
        Ok(ComplexInterval {
            re: modulus.ln()?,
            im: self.arg_continuous()?,
        })
    }

    /// An enclosure of arg over the rectangle, continuous on the rectangle
    /// (no 2-pi jump inside), with width below pi. The representative branch
    /// is the principal one except for rectangles crossing the negative real
    /// axis, which report values near +pi..3pi/2 / strictly speaking in
    /// (pi/2, 3pi/2). The caller does its own unwrapping.
    pub fn arg_continuous(self) -> Result<Interval> {
        if self.re.lo() > 0.0 {
            return Ok((self.im / self.re).atan());
        }
        if self.im.lo() > 0.0 {
            return Ok(*PI_2 + (-self.re / self.im).atan());
        }
        if self.im.hi() < 0.0 {
            return Ok(-*PI_2 - (self.re / self.im).atan());
        }
        if self.re.hi() < 0.0 {
            return Ok(*PI + (self.im / self.re).atan());
        }
        Err(Error::domain(format!(
            "argument of {self} containing zero"
        )))
    }

    /// e^(i*theta) as a rectangle on the unit circle.
    pub fn unit_circle(theta: Interval) -> ComplexInterval {
        ComplexInterval {
            re: theta.cos(),
            im: theta.sin(),
        }
    }

    /// Real-base power: b^self for b > 0.
    pub fn pow_base(self, base: Interval) -> Result<ComplexInterval> {
        let l = base.ln()?;
        Ok(self.scale(l).exp())
    }
}

impl Neg for ComplexInterval {
    type Output = ComplexInterval;
    fn neg(self) -> ComplexInterval {
        ComplexInterval {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Add for ComplexInterval {
    type Output = ComplexInterval;
    fn add(self, rhs: ComplexInterval) -> ComplexInterval {
        ComplexInterval {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl Sub for ComplexInterval {
    type Output = ComplexInterval;
    fn sub(self, rhs: ComplexInterval) -> ComplexInterval {
        ComplexInterval {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl Mul for ComplexInterval {
    type Output = ComplexInterval;
    fn mul(self, rhs: ComplexInterval) -> ComplexInterval {
        ComplexInterval {
            re: self.re * rhs.re - self.im * rhs.im,
            im: self.re * rhs.im + self.im * rhs.re,
        }
    }
}

impl fmt::Display for ComplexInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i", self.re, self.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(re: f64, im: f64) -> ComplexInterval {
        ComplexInterval::point(re, im)
    }

    #[test]
    fn field_ops_match_scalar_arithmetic() {
        let a = pt(1.5, -2.0);
        let b = pt(-0.25, 3.0);
        let p = a * b;
        // (1.5 - 2i)(-0.25 + 3i) = (-0.375 + 6) + (4.5 + 0.5)i
        assert!(p.contains_point(5.625, 5.0));
        assert!(p.re.width() < 1e-14 && p.im.width() < 1e-14);

        let q = p.checked_div(b).unwrap();
        assert!(q.contains_point(1.5, -2.0));
        assert!(q.re.width() < 1e-13);
    }

    #[test]
    fn abs_of_pythagorean_point_is_exact() {
        let z = pt(3.0, 4.0);
        assert_eq!(z.abs(), Interval::point(5.0));
    }

    #[test]
    fn exp_of_i_pi_is_minus_one() {
        let z = ComplexInterval::new(Interval::ZERO, *PI);
        let e = z.exp();
        assert!(e.contains_point(-1.0, 0.0));
        assert!(e.re.width() < 1e-14 && e.im.width() < 1e-14);
    }

    #[test]
    fn log_exp_round_trip() {
        let z = pt(2.0, 1.5);
        let w = z.ln().unwrap().exp();
        assert!(w.contains_point(2.0, 1.5));
    }

    #[test]
    fn arg_in_each_half_plane() {
        assert!(pt(1.0, 1.0)
            .arg_continuous()
            .unwrap()
            .contains(std::f64::consts::FRAC_PI_4));
        assert!(pt(-1.0, 1.0)
            .arg_continuous()
            .unwrap()
            .contains(3.0 * std::f64::consts::FRAC_PI_4));
        assert!(pt(0.0, -2.0)
            .arg_continuous()
            .unwrap()
            .contains(-std::f64::consts::FRAC_PI_2));
        // Crossing the negative real axis stays continuous (values near pi,
        // not jumping to -pi).
        let b = ComplexInterval::new(Interval::new(-2.0, -1.0), Interval::new(-0.1, 0.1));
        let a = b.arg_continuous().unwrap();
        assert!(a.contains(std::f64::consts::PI));
        assert!(a.width() < 0.3);
        assert!(ComplexInterval::new(Interval::new(-1.0, 1.0), Interval::new(-1.0, 1.0))
            .arg_continuous()
            .is_err());
    }

    #[test]
    fn division_by_zero_straddling_rectangle_fails() {
        let z = pt(1.0, 0.0);
        let w = ComplexInterval::new(Interval::new(-0.5, 0.5), Interval::new(-0.5, 0.5));
        assert!(z.checked_div(w).is_err());
    }

    #[test]
    fn pow_with_real_base() {
        // 4^(1/2 + 0i) = 2
        let s = pt(0.5, 0.0);
        let v = s.pow_base(Interval::point(4.0)).unwrap();
        assert!(v.contains_point(2.0, 0.0));
        assert!(v.re.width() < 1e-13);
    }
}
