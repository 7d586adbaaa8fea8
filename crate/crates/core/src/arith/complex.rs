//! Complex numbers over intervals (certified) and over plain big floats
//! (for iterative polishing, where only the final residual check matters).

use num_rational::BigRational;

use super::float::{BigFloat, Round};
use super::interval::Interval;

/// Rectangular complex enclosure `re + i*im`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CInterval {
    pub re: Interval,
    pub im: Interval,
}

impl CInterval {
    pub fn new(re: Interval, im: Interval) -> Self {
        CInterval { re, im }
    }

    pub fn zero() -> Self {
        CInterval { re: Interval::zero(), im: Interval::zero() }
    }

    pub fn from_real(re: Interval) -> Self {
        CInterval { re, im: Interval::zero() }
    }

    pub fn point(z: &CFloat) -> Self {
        CInterval { re: Interval::point(z.re.clone()), im: Interval::point(z.im.clone()) }
    }

    pub fn from_rational_parts(re: &BigRational, im: &BigRational, prec: u32) -> Self {
        CInterval { re: Interval::from_rational(re, prec), im: Interval::from_rational(im, prec) }
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn add(&self, o: &Self, prec: u32) -> Self {
        CInterval { re: self.re.add(&o.re, prec), im: self.im.add(&o.im, prec) }
    }

    pub fn sub(&self, o: &Self, prec: u32) -> Self {
        CInterval { re: self.re.sub(&o.re, prec), im: self.im.sub(&o.im, prec) }
    }

    pub fn mul(&self, o: &Self, prec: u32) -> Self {
        let re = self.re.mul(&o.re, prec).sub(&self.im.mul(&o.im, prec), prec);
        let im = self.re.mul(&o.im, prec).add(&self.im.mul(&o.re, prec), prec);
        CInterval { re, im }
    }

    pub fn scale(&self, k: &Interval, prec: u32) -> Self {
        CInterval { re: self.re.mul(k, prec), im: self.im.mul(k, prec) }
    }

    /// Enclosure of `|z|^2`.
    pub fn norm_sqr(&self, prec: u32) -> Interval {
        self.re.square(prec).add(&self.im.square(prec), prec)
    }

    /// Enclosure of `|z|`.
    pub fn abs(&self, prec: u32) -> Interval {
        self.norm_sqr(prec).sqrt(prec).expect("non-negative")
    }
}

/// Complex big float with round-down arithmetic at a fixed precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CFloat {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl CFloat {
    pub fn new(re: BigFloat, im: BigFloat) -> Self {
        CFloat { re, im }
    }

    pub fn zero() -> Self {
        CFloat { re: BigFloat::zero(), im: BigFloat::zero() }
    }

    pub fn from_f64(re: f64, im: f64) -> Self {
        CFloat { re: BigFloat::from_f64(re), im: BigFloat::from_f64(im) }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        CFloat { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn add(&self, o: &Self, prec: u32) -> Self {
        CFloat { re: self.re.add(&o.re, prec, Round::Down), im: self.im.add(&o.im, prec, Round::Down) }
    }

    pub fn sub(&self, o: &Self, prec: u32) -> Self {
        CFloat { re: self.re.sub(&o.re, prec, Round::Down), im: self.im.sub(&o.im, prec, Round::Down) }
    }

    pub fn mul(&self, o: &Self, prec: u32) -> Self {
        let d = Round::Down;
        let re = self.re.mul(&o.re, prec + 4, d).sub(&self.im.mul(&o.im, prec + 4, d), prec, d);
        let im = self.re.mul(&o.im, prec + 4, d).add(&self.im.mul(&o.re, prec + 4, d), prec, d);
        CFloat { re, im }
    }

    pub fn mul_real(&self, k: &BigFloat, prec: u32) -> Self {
        CFloat { re: self.re.mul(k, prec, Round::Down), im: self.im.mul(k, prec, Round::Down) }
    }

    pub fn norm_sqr(&self, prec: u32) -> BigFloat {
        let d = Round::Down;
        self.re.mul(&self.re, prec, d).add(&self.im.mul(&self.im, prec, d), prec, d)
    }

    /// Quotient; `None` when the divisor is zero.
    pub fn div(&self, o: &Self, prec: u32) -> Option<Self> {
        let n = o.norm_sqr(prec + 8);
        if n.is_zero() {
            return None;
        }
        let num = self.mul(&o.conj(), prec + 8);
        Some(CFloat { re: num.re.div(&n, prec, Round::Down), im: num.im.div(&n, prec, Round::Down) })
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    /// Rough magnitude for convergence tests.
    pub fn abs_f64(&self) -> f64 {
        let (a, b) = self.to_f64();
        a.hypot(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_product_contains_exact_product() {
        let a = CInterval::new(Interval::from_f64(1.5), Interval::from_f64(-2.0));
        let b = CInterval::new(Interval::from_f64(0.25), Interval::from_f64(3.0));
        let p = a.mul(&b, 64);
        assert!(p.re.contains(&BigFloat::from_f64(6.375)));
        assert!(p.im.contains(&BigFloat::from_f64(4.0)));
        assert!(a.norm_sqr(64).contains(&BigFloat::from_f64(6.25)));
    }

    #[test]
    fn float_division_inverts_multiplication() {
        let a = CFloat::from_f64(1.0, 2.0);
        let b = CFloat::from_f64(-3.0, 0.5);
        let q = a.mul(&b, 200).div(&b, 200).unwrap();
        assert!((q.re.to_f64() - 1.0).abs() < 1e-50);
        assert!((q.im.to_f64() - 2.0).abs() < 1e-50);
        assert!(a.div(&CFloat::zero(), 64).is_none());
    }
}
