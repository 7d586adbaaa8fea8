use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use num_rational::BigRational;

use crate::arith::{trig, Interval};
use crate::error::{Error, Result};

/// A rational multiple `num/den` of pi in `(0, pi]`, kept in lowest terms.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Angle {
    num: u64,
    den: u64,
}

impl Angle {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if num == 0 || den == 0 || num > den {
            return Err(Error::OutOfRange(format!("{num}/{den}pi")));
        }
        let g = num.gcd(&den);
        Ok(Angle { num: num / g, den: den / g })
    }

    pub fn pi() -> Self {
        Angle { num: 1, den: 1 }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    /// The angle divided by pi.
    pub fn ratio(&self) -> BigRational {
        BigRational::new(self.num.into(), self.den.into())
    }

    /// Double-precision value in radians, for display and plotting only.
    pub fn float_hint(&self) -> f64 {
        std::f64::consts::PI * self.num as f64 / self.den as f64
    }

    /// Enclosure of the angle in radians.
    pub fn radians(&self, prec: u32) -> Interval {
        trig::rational_pi(&self.ratio(), prec)
    }

    /// `k * num / den` is an integer, i.e. `sin(k theta) = 0`.
    pub fn multiple_is_integer(&self, k: u64) -> bool {
        (k as u128 * self.num as u128) % self.den as u128 == 0
    }

    /// `k * num / den - 1/2` is an integer, i.e. `cos(k theta) = 0`.
    pub fn multiple_is_half_odd(&self, k: u64) -> bool {
        let twice = 2 * k as u128 * self.num as u128;
        let d = self.den as u128;
        twice % d == 0 && (twice / d) % 2 == 1
    }

    /// `floor(k * num / den)`.
    pub fn multiple_floor(&self, k: u64) -> u64 {
        ((k as u128 * self.num as u128) / self.den as u128) as u64
    }

    /// Enclosures of `(sin k theta, cos k theta)`; exact where the value is
    /// rational.
    pub fn sin_cos_multiple(&self, k: u64, prec: u32) -> (Interval, Interval) {
        let x = BigRational::new((k as u128 * self.num as u128).into(), self.den.into());
        trig::sin_cos_pi(&x, prec)
    }
}

impl Ord for Angle {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl PartialOrd for Angle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "pi")
        } else {
            write!(f, "{}/{}pi", self.num, self.den)
        }
    }
}

impl fmt::Debug for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Angle({}/{})", self.num, self.den)
    }
}
