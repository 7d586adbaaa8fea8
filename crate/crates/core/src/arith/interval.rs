//! Closed intervals with [`BigFloat`] endpoints and outward rounding.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::float::{BigFloat, Round};

/// The closed interval `[lo, hi]`. All operations round outward at the
/// requested precision, so the result always contains the exact result of
/// the operation applied to any members of the operands.
#[derive(Clone, PartialEq, Eq)]
pub struct Interval {
    lo: BigFloat,
    hi: BigFloat,
}

impl Interval {
    pub fn new(lo: BigFloat, hi: BigFloat) -> Self {
        debug_assert!(lo <= hi, "inverted interval {lo:?} > {hi:?}");
        Interval { lo, hi }
    }

    pub fn point(v: BigFloat) -> Self {
        Interval { lo: v.clone(), hi: v }
    }

    pub fn zero() -> Self {
        Self::point(BigFloat::zero())
    }

    pub fn one() -> Self {
        Self::point(BigFloat::one())
    }

    pub fn from_int<T: Into<BigInt>>(v: T) -> Self {
        Self::point(BigFloat::from_int(v))
    }

    pub fn from_f64(v: f64) -> Self {
        Self::point(BigFloat::from_f64(v))
    }

    /// Tightest enclosure of `q` at `prec` bits (a point when `q` is dyadic
    /// and fits).
    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Interval {
            lo: BigFloat::from_rational(q, prec, Round::Down),
            hi: BigFloat::from_rational(q, prec, Round::Up),
        }
    }

    pub fn lo(&self) -> &BigFloat {
        &self.lo
    }

    pub fn hi(&self) -> &BigFloat {
        &self.hi
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// The degenerate interval `[0, 0]`.
    pub fn is_exact_zero(&self) -> bool {
        self.lo.is_zero() && self.hi.is_zero()
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn contains(&self, x: &BigFloat) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_rational(&self, q: &BigRational) -> bool {
        &self.lo.to_rational() <= q && q <= &self.hi.to_rational()
    }

    pub fn overlaps(&self, other: &Self) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Certified sign: `Some(1)`/`Some(-1)` when the interval excludes zero,
    /// `Some(0)` for `[0, 0]`, `None` otherwise.
    pub fn sign(&self) -> Option<i32> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else if self.is_exact_zero() {
            Some(0)
        } else {
            None
        }
    }

    pub fn width(&self, prec: u32) -> BigFloat {
        self.hi.sub(&self.lo, prec, Round::Up)
    }

    pub fn mid(&self, prec: u32) -> BigFloat {
        self.lo.add(&self.hi, prec + 1, Round::Down).mul_pow2(-1)
    }

    /// Upper bound on `|x - mid|` for all members.
    pub fn radius(&self, prec: u32) -> BigFloat {
        let m = self.mid(prec);
        let a = m.sub(&self.lo, prec, Round::Up);
        let b = self.hi.sub(&m, prec, Round::Up);
        a.max(b)
    }

    /// Upper bound on `|x|` for all members.
    pub fn mag(&self) -> BigFloat {
        self.lo.abs().max(self.hi.abs())
    }

    /// Lower bound on `|x|` for all members.
    pub fn mig(&self) -> BigFloat {
        if self.contains_zero() {
            BigFloat::zero()
        } else {
            self.lo.abs().min(self.hi.abs())
        }
    }

    pub fn neg(&self) -> Self {
        Interval { lo: self.hi.neg(), hi: self.lo.neg() }
    }

    pub fn abs(&self) -> Self {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            self.neg()
        } else {
            Interval { lo: BigFloat::zero(), hi: self.mag() }
        }
    }

    pub fn add(&self, other: &Self, prec: u32) -> Self {
        Interval {
            lo: self.lo.add(&other.lo, prec, Round::Down),
            hi: self.hi.add(&other.hi, prec, Round::Up),
        }
    }

    pub fn sub(&self, other: &Self, prec: u32) -> Self {
        Interval {
            lo: self.lo.sub(&other.hi, prec, Round::Down),
            hi: self.hi.sub(&other.lo, prec, Round::Up),
        }
    }

    pub fn mul(&self, other: &Self, prec: u32) -> Self {
        if self.is_exact_zero() || other.is_exact_zero() {
            return Self::zero();
        }
        let (a, b, c, d) = (&self.lo, &self.hi, &other.lo, &other.hi);
        if self.is_point() && other.is_point() {
            return Interval { lo: a.mul(c, prec, Round::Down), hi: a.mul(c, prec, Round::Up) };
        }
        let a_nn = !a.is_negative();
        let b_np = !b.is_positive();
        let c_nn = !c.is_negative();
        let d_np = !d.is_positive();
        let down = |x: &BigFloat, y: &BigFloat| x.mul(y, prec, Round::Down);
        let up = |x: &BigFloat, y: &BigFloat| x.mul(y, prec, Round::Up);
        match (a_nn, b_np, c_nn, d_np) {
            // self >= 0
            (true, _, true, _) => Interval { lo: down(a, c), hi: up(b, d) },
            (true, _, _, true) => Interval { lo: down(b, c), hi: up(a, d) },
            (true, _, _, _) => Interval { lo: down(b, c), hi: up(b, d) },
            // self <= 0
            (_, true, true, _) => Interval { lo: down(a, d), hi: up(b, c) },
            (_, true, _, true) => Interval { lo: down(b, d), hi: up(a, c) },
            (_, true, _, _) => Interval { lo: down(a, d), hi: up(a, c) },
            // self straddles zero
            (_, _, true, _) => Interval { lo: down(a, d), hi: up(b, d) },
            (_, _, _, true) => Interval { lo: down(b, c), hi: up(a, c) },
            _ => {
                let lo = down(a, d).min(down(b, c));
                let hi = up(a, c).max(up(b, d));
                Interval { lo, hi }
            }
        }
    }

    pub fn square(&self, prec: u32) -> Self {
        let m = self.abs();
        Interval {
            lo: m.lo.mul(&m.lo, prec, Round::Down),
            hi: m.hi.mul(&m.hi, prec, Round::Up),
        }
    }

    /// Quotient, `None` when the divisor contains zero.
    pub fn div(&self, other: &Self, prec: u32) -> Option<Self> {
        if other.contains_zero() {
            return None;
        }
        if self.is_exact_zero() {
            return Some(Self::zero());
        }
        let (a, b, c, d) = (&self.lo, &self.hi, &other.lo, &other.hi);
        let down = |x: &BigFloat, y: &BigFloat| x.div(y, prec, Round::Down);
        let up = |x: &BigFloat, y: &BigFloat| x.div(y, prec, Round::Up);
        let nonneg = !a.is_negative();
        let nonpos = !b.is_positive();
        Some(if c.is_positive() {
            if nonneg {
                Interval { lo: down(a, d), hi: up(b, c) }
            } else if nonpos {
                Interval { lo: down(a, c), hi: up(b, d) }
            } else {
                Interval { lo: down(a, c), hi: up(b, c) }
            }
        } else if nonneg {
            Interval { lo: down(b, d), hi: up(a, c) }
        } else if nonpos {
            Interval { lo: down(b, c), hi: up(a, d) }
        } else {
            Interval { lo: down(b, d), hi: up(a, d) }
        })
    }

    pub fn recip(&self, prec: u32) -> Option<Self> {
        if self.contains_zero() {
            return None;
        }
        let one = BigFloat::one();
        Some(Interval {
            lo: one.div(&self.hi, prec, Round::Down),
            hi: one.div(&self.lo, prec, Round::Up),
        })
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        Interval { lo: self.lo.mul_pow2(k), hi: self.hi.mul_pow2(k) }
    }

    /// Square root of the non-negative part; `None` if entirely negative.
    pub fn sqrt(&self, prec: u32) -> Option<Self> {
        if self.hi.is_negative() {
            return None;
        }
        let lo = if self.lo.is_positive() {
            self.lo.sqrt(prec, Round::Down)
        } else {
            BigFloat::zero()
        };
        Some(Interval { lo, hi: self.hi.sqrt(prec, Round::Up) })
    }

    /// Convex hull.
    pub fn hull(&self, other: &Self) -> Self {
        Interval {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
        }
    }

    /// Widen by `r` on both sides.
    pub fn inflate(&self, r: &BigFloat, prec: u32) -> Self {
        Interval {
            lo: self.lo.sub(r, prec, Round::Down),
            hi: self.hi.add(r, prec, Round::Up),
        }
    }

    /// Symmetric interval `[-r, r]`.
    pub fn symmetric(r: &BigFloat) -> Self {
        let r = r.abs();
        Interval { lo: r.neg(), hi: r }
    }

    pub fn intersect(&self, other: &Self) -> Option<Self> {
        let lo = self.lo.clone().max(other.lo.clone());
        let hi = self.hi.clone().min(other.hi.clone());
        (lo <= hi).then_some(Interval { lo, hi })
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.lo.to_f64_round(Round::Down), self.hi.to_f64_round(Round::Up))
    }

    pub fn mid_f64(&self) -> f64 {
        self.mid(64).to_f64()
    }

    /// Decimal rendering of the midpoint with the certified digits, followed
    /// by an explicit upper bound on the distance to any member, e.g.
    /// `-0.5000000000 ± 3.1e-31`.
    pub fn to_decimal_string(&self, max_digits: usize) -> String {
        let prec = (self.lo.bits().max(self.hi.bits()) as u32).max(64) + 8;
        let mid = self.mid(prec);
        let rad = self.radius(prec).to_rational();
        let ten = BigRational::from_integer(10.into());
        // Number of fractional digits that are meaningful given the radius.
        let mut digits = 0usize;
        let mut scale = BigRational::one();
        let exact = mid.to_rational();
        let tenth = BigRational::new(1.into(), 10.into());
        while digits < max_digits {
            let done = if rad.is_zero() {
                (&exact * &scale).is_integer()
            } else {
                &rad * &scale >= tenth
            };
            if done {
                break;
            }
            digits += 1;
            scale *= &ten;
        }
        let scaled = &exact * &scale;
        let nearest = (scaled.clone() + BigRational::new(1.into(), 2.into())).floor();
        let shown = &nearest / &scale;
        let err = (&exact - &shown).abs_sub_zero() + &rad;
        let text = format_fixed(&nearest.to_integer(), digits);
        if err.is_zero() {
            text
        } else {
            format!("{text} ± {}", format_bound(&err))
        }
    }
}

trait AbsSubZero {
    fn abs_sub_zero(self) -> Self;
}

impl AbsSubZero for BigRational {
    fn abs_sub_zero(self) -> Self {
        if self < BigRational::zero() {
            -self
        } else {
            self
        }
    }
}

fn format_fixed(scaled: &BigInt, digits: usize) -> String {
    let neg = scaled < &BigInt::zero();
    let s = if neg { (-scaled).to_string() } else { scaled.to_string() };
    let body = if digits == 0 {
        s
    } else {
        let padded = format!("{:0>width$}", s, width = digits + 1);
        let (int, frac) = padded.split_at(padded.len() - digits);
        format!("{int}.{frac}")
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

/// Two significant digits, rounded up.
fn format_bound(err: &BigRational) -> String {
    let f = BigFloat::from_rational(err, 64, Round::Up).to_f64_round(Round::Up);
    if f == 0.0 {
        return "0".into();
    }
    let e = f.log10().floor() as i32;
    let m = (f / 10f64.powi(e) * 10.0).ceil() / 10.0;
    let (m, e) = if m >= 10.0 { (m / 10.0, e + 1) } else { (m, e) };
    format!("{m:.1}e{e}")
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.to_f64_pair();
        write!(f, "[{lo:e}, {hi:e}]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: f64, hi: f64) -> Interval {
        Interval::new(BigFloat::from_f64(lo), BigFloat::from_f64(hi))
    }

    #[test]
    fn multiplication_sign_cases_contain_all_products() {
        let samples = [(-3.0, -1.0), (-2.0, 5.0), (0.5, 4.0), (0.0, 2.0), (-1.5, 0.0)];
        for &(a, b) in &samples {
            for &(c, d) in &samples {
                let p = iv(a, b).mul(&iv(c, d), 53);
                for x in [a, b, (a + b) / 2.0] {
                    for y in [c, d, (c + d) / 2.0] {
                        let v = BigFloat::from_f64(x * y);
                        assert!(p.contains(&v), "{x}*{y} not in {p:?}");
                    }
                }
                let (lo, hi) = p.to_f64_pair();
                let corners = [a * c, a * d, b * c, b * d];
                let tlo = corners.iter().cloned().fold(f64::INFINITY, f64::min);
                let thi = corners.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                assert_eq!((lo, hi), (tlo, thi));
            }
        }
    }

    #[test]
    fn division_excludes_zero_divisors() {
        assert!(iv(1.0, 2.0).div(&iv(-1.0, 1.0), 64).is_none());
        let q = iv(1.0, 1.0).div(&Interval::from_int(3), 64).unwrap();
        assert!(q.contains_rational(&BigRational::new(1.into(), 3.into())));
        assert!(!q.is_point());
    }

    #[test]
    fn sign_is_certified_only_when_zero_excluded() {
        assert_eq!(iv(0.1, 0.2).sign(), Some(1));
        assert_eq!(iv(-0.2, -0.1).sign(), Some(-1));
        assert_eq!(Interval::zero().sign(), Some(0));
        assert_eq!(iv(-0.1, 0.1).sign(), None);
    }

    #[test]
    fn decimal_string_reports_bound() {
        let third = Interval::from_rational(&BigRational::new(1.into(), 3.into()), 128);
        let s = third.to_decimal_string(40);
        assert!(s.starts_with("0.33333333333333333333333333333333333"), "{s}");
        assert!(s.contains('±'));
        assert_eq!(Interval::from_f64(-0.5).to_decimal_string(40), "-0.5");
        assert_eq!(Interval::from_int(3).to_decimal_string(40), "3");
    }
}
