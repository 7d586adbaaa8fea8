//! Binary floating point numbers with arbitrary precision and explicit
//! rounding direction.
//!
//! A [`BigFloat`] is the exact dyadic rational `mant * 2^exp`. Every
//! arithmetic operation takes a target precision (significand bits) and a
//! [`Round`] direction, so interval endpoints can be rounded outward.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Rounding direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    /// Toward negative infinity.
    Down,
    /// Toward positive infinity.
    Up,
}

impl Round {
    pub fn flip(self) -> Round {
        match self {
            Round::Down => Round::Up,
            Round::Up => Round::Down,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BigFloat {
    mant: BigInt,
    exp: i64,
}

/// `floor(m / 2^s)` or `ceil(m / 2^s)`.
fn shr_round(m: &BigInt, s: u64, dir: Round) -> BigInt {
    if s == 0 {
        return m.clone();
    }
    // `>>` on BigInt rounds toward negative infinity.
    match dir {
        Round::Down => m >> s,
        Round::Up => -((-m) >> s),
    }
}

impl BigFloat {
    pub fn zero() -> Self {
        BigFloat { mant: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        BigFloat { mant: BigInt::one(), exp: 0 }
    }

    /// Exact value `mant * 2^exp`, normalized so the mantissa is odd.
    pub fn from_parts(mant: BigInt, exp: i64) -> Self {
        let mut f = BigFloat { mant, exp };
        f.normalize();
        f
    }

    pub fn from_int<T: Into<BigInt>>(v: T) -> Self {
        Self::from_parts(v.into(), 0)
    }

    /// Exact conversion; panics on non-finite input.
    pub fn from_f64(v: f64) -> Self {
        assert!(v.is_finite(), "non-finite f64 {v}");
        if v == 0.0 {
            return Self::zero();
        }
        let bits = v.to_bits();
        let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), raw_exp - 1075)
        };
        Self::from_parts(BigInt::from(m) * sign, e)
    }

    /// Rational rounded to `prec` bits in direction `dir`.
    pub fn from_rational(q: &BigRational, prec: u32, dir: Round) -> Self {
        if q.is_integer() {
            return Self::from_int(q.numer().clone()).round(prec, dir);
        }
        let num = Self::from_int(q.numer().clone());
        let den = Self::from_int(q.denom().clone());
        num.div(&den, prec, dir)
    }

    fn normalize(&mut self) {
        if self.mant.is_zero() {
            self.exp = 0;
            return;
        }
        let tz = self.mant.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mant >>= tz;
            self.exp += tz as i64;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    /// Number of significand bits in use.
    pub fn bits(&self) -> u64 {
        self.mant.bits()
    }

    /// Exponent of the leading bit plus one: `2^(top-1) <= |x| < 2^top`.
    /// Zero maps to `i64::MIN`.
    pub fn top(&self) -> i64 {
        if self.is_zero() {
            i64::MIN
        } else {
            self.exp + self.mant.bits() as i64
        }
    }

    pub fn neg(&self) -> Self {
        BigFloat { mant: -&self.mant, exp: self.exp }
    }

    pub fn abs(&self) -> Self {
        BigFloat { mant: self.mant.abs(), exp: self.exp }
    }

    /// Multiply by `2^k`, exact.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        BigFloat { mant: self.mant.clone(), exp: self.exp + k }
    }

    /// Round to at most `prec` significand bits.
    pub fn round(&self, prec: u32, dir: Round) -> Self {
        let bits = self.mant.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let s = bits - prec as u64;
        Self::from_parts(shr_round(&self.mant, s, dir), self.exp + s as i64)
    }

    pub fn add(&self, other: &Self, prec: u32, dir: Round) -> Self {
        if other.is_zero() {
            return self.round(prec, dir);
        }
        if self.is_zero() {
            return other.round(prec, dir);
        }
        // When one operand lies entirely below the rounding window of the
        // other, replace it by a sticky unit that still steers the rounding.
        let (ta, tb) = (self.top(), other.top());
        let window = prec as i64 + 4;
        if tb < ta - window {
            if let Some(r) = Self::add_sticky(self, other, prec, dir) {
                return r;
            }
        }
        if ta < tb - window {
            if let Some(r) = Self::add_sticky(other, self, prec, dir) {
                return r;
            }
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &other.mant << (other.exp - e) as u64;
        BigFloat { mant: a + b, exp: e }.round(prec, dir).normalized()
    }

    /// `big + tiny` where `|tiny|` is below one unit of the extended
    /// significand of `big`; `None` if that does not hold.
    fn add_sticky(big: &Self, tiny: &Self, prec: u32, dir: Round) -> Option<Self> {
        let shift = (prec as u64 + 4).saturating_sub(big.bits()) + 2;
        if tiny.top() > big.exp - shift as i64 {
            return None;
        }
        let m = (&big.mant << shift) + BigInt::from(tiny.signum());
        Some(BigFloat { mant: m, exp: big.exp - shift as i64 }.round(prec, dir).normalized())
    }

    fn normalized(mut self) -> Self {
        self.normalize();
        self
    }

    pub fn sub(&self, other: &Self, prec: u32, dir: Round) -> Self {
        self.add(&other.neg(), prec, dir)
    }

    pub fn mul(&self, other: &Self, prec: u32, dir: Round) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        BigFloat { mant: &self.mant * &other.mant, exp: self.exp + other.exp }.round(prec, dir)
    }

    /// Exact product (no rounding).
    pub fn mul_exact(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        BigFloat { mant: &self.mant * &other.mant, exp: self.exp + other.exp }
    }

    /// Exact sum (no rounding).
    pub fn add_exact(&self, other: &Self) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &other.mant << (other.exp - e) as u64;
        Self::from_parts(a + b, e)
    }

    /// Quotient rounded in direction `dir`. Panics on division by zero.
    pub fn div(&self, other: &Self, prec: u32, dir: Round) -> Self {
        assert!(!other.is_zero(), "BigFloat division by zero");
        if self.is_zero() {
            return Self::zero();
        }
        let s = (prec as i64 + 2 + other.bits() as i64 - self.bits() as i64).max(0) as u64;
        let num = &self.mant << s;
        let (mut q, r) = num.div_mod_floor(&other.mant);
        // div_mod_floor gives floor(num/den) for any signs.
        if dir == Round::Up && !r.is_zero() {
            q += 1;
        }
        Self::from_parts(q, self.exp - other.exp - s as i64).round(prec, dir)
    }

    /// Square root of a non-negative number.
    pub fn sqrt(&self, prec: u32, dir: Round) -> Self {
        assert!(!self.is_negative(), "sqrt of negative BigFloat");
        if self.is_zero() {
            return Self::zero();
        }
        let mut m = self.mant.clone();
        let mut e = self.exp;
        if e.rem_euclid(2) != 0 {
            m <<= 1u32;
            e -= 1;
        }
        let want = 2 * (prec as i64 + 2);
        let s = (want - m.bits() as i64).max(0);
        let s = s + (s & 1);
        m <<= s as u64;
        e -= s;
        let root = m.sqrt();
        let exact = &root * &root == m;
        let root = if dir == Round::Up && !exact { root + 1 } else { root };
        Self::from_parts(root, e / 2).round(prec, dir)
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << self.exp as u64)
        } else {
            BigRational::new(self.mant.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    /// Nearest-ish f64 rounded in the given direction. Overflow saturates to
    /// +-inf (which is a valid outer bound).
    pub fn to_f64_round(&self, dir: Round) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let r = self.round(53, dir);
        let m = r.mant.to_f64().unwrap_or(f64::NAN);
        let top = r.top();
        if top > 1100 {
            return if m > 0.0 { f64::INFINITY } else { f64::NEG_INFINITY };
        }
        if top < -1070 {
            // Below the normal range: return the tiny bound in the right direction.
            return match (dir, m > 0.0) {
                (Round::Down, true) => 0.0,
                (Round::Up, true) => f64::from_bits(1),
                (Round::Down, false) => -f64::from_bits(1),
                (Round::Up, false) => -0.0,
            };
        }
        ldexp(m, r.exp)
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let r = self.round(60, Round::Down);
        let m = r.mant.to_f64().unwrap_or(f64::NAN);
        if r.top() > 1100 {
            return if m > 0.0 { f64::INFINITY } else { f64::NEG_INFINITY };
        }
        if r.top() < -1100 {
            return 0.0;
        }
        ldexp(m, r.exp)
    }

    /// Floor of the value as an integer.
    pub fn floor_int(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mant << self.exp as u64
        } else {
            &self.mant >> (-self.exp) as u64
        }
    }
}

fn ldexp(m: f64, e: i64) -> f64 {
    // Split the scaling so intermediate powers stay finite.
    let mut x = m;
    let mut e = e;
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
    }
    x * 2f64.powi(e as i32)
}

impl Ord for BigFloat {
    fn cmp(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.signum(), other.signum());
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        let (ta, tb) = (self.top(), other.top());
        if ta != tb {
            let by_mag = ta.cmp(&tb);
            return if sa > 0 { by_mag } else { by_mag.reverse() };
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &other.mant << (other.exp - e) as u64;
        a.cmp(&b)
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bf(v: f64) -> BigFloat {
        BigFloat::from_f64(v)
    }

    #[test]
    fn shift_right_floors_negative_values() {
        let m = BigInt::from(-5);
        assert_eq!(shr_round(&m, 1, Round::Down), BigInt::from(-3));
        assert_eq!(shr_round(&m, 1, Round::Up), BigInt::from(-2));
        assert_eq!(shr_round(&BigInt::from(5), 1, Round::Up), BigInt::from(3));
    }

    #[test]
    fn f64_round_trip_is_exact() {
        for v in [1.0, -0.375, 1e-300, 3.5e200, 5e-324, f64::MAX] {
            assert_eq!(bf(v).to_f64(), v);
        }
    }

    #[test]
    fn division_brackets_one_third() {
        let third = BigRational::new(1.into(), 3.into());
        let lo = BigFloat::from_rational(&third, 64, Round::Down);
        let hi = BigFloat::from_rational(&third, 64, Round::Up);
        assert!(lo.to_rational() < third && third < hi.to_rational());
        let gap = hi.to_rational() - lo.to_rational();
        assert!(gap < BigRational::new(1.into(), BigInt::one() << 64u32));
    }

    #[test]
    fn sqrt_brackets_two() {
        let two = BigFloat::from_int(2);
        let lo = two.sqrt(100, Round::Down);
        let hi = two.sqrt(100, Round::Up);
        let lo2 = lo.mul_exact(&lo);
        let hi2 = hi.mul_exact(&hi);
        assert!(lo2 < two && two < hi2);
        assert_eq!(BigFloat::from_int(9).sqrt(10, Round::Up), BigFloat::from_int(3));
    }

    #[test]
    fn sticky_add_rounds_in_direction() {
        let one = BigFloat::one();
        let tiny = BigFloat::from_parts(BigInt::one(), -500);
        let up = one.add(&tiny, 53, Round::Up);
        let down = one.add(&tiny, 53, Round::Down);
        assert!(up > one);
        assert_eq!(down, one);
        let down_neg = one.sub(&tiny, 53, Round::Down);
        assert!(down_neg < one);
        assert_eq!(one.sub(&tiny, 53, Round::Up), one);
    }

    #[test]
    fn ordering_matches_values() {
        let mut xs: Vec<f64> = vec![3.0, -2.5, 0.0, 1e-20, -1e20, 7.25, 0.5];
        let mut fs: Vec<BigFloat> = xs.iter().map(|&v| bf(v)).collect();
        xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        fs.sort();
        let back: Vec<f64> = fs.iter().map(|f| f.to_f64()).collect();
        assert_eq!(back, xs);
    }
}
