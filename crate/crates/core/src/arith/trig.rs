//! Enclosures of pi, sin/cos at rational multiples of pi, and atan.

use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::float::{BigFloat, Round};
use super::interval::Interval;

static PI_CACHE: Mutex<Option<(u32, Interval)>> = Mutex::new(None);

/// Enclosure of pi with at least `prec` correct bits.
pub fn pi(prec: u32) -> Interval {
    {
        let cache = PI_CACHE.lock().unwrap_or_else(|e| e.into_inner());
        if let Some((p, iv)) = cache.as_ref() {
            if *p >= prec {
                return round_outward(iv, prec);
            }
        }
    }
    let work = prec.max(256);
    let iv = machin_pi(work);
    let out = round_outward(&iv, prec);
    *PI_CACHE.lock().unwrap_or_else(|e| e.into_inner()) = Some((work, iv));
    out
}

fn round_outward(iv: &Interval, prec: u32) -> Interval {
    Interval::new(iv.lo().round(prec, Round::Down), iv.hi().round(prec, Round::Up))
}

/// pi = 16 atan(1/5) - 4 atan(1/239).
fn machin_pi(prec: u32) -> Interval {
    let wp = prec + 24;
    let a5 = atan_inv(5, wp);
    let a239 = atan_inv(239, wp);
    a5.mul_pow2(4).sub(&a239.mul_pow2(2), wp)
}

/// atan(1/m) for integer m >= 2 via the alternating Gregory series.
fn atan_inv(m: u32, prec: u32) -> Interval {
    let m = BigInt::from(m);
    let m2 = &m * &m;
    let limit = BigInt::one() << (prec as u64 + 8);
    let mut power = m.clone();
    let mut sum = Interval::zero();
    let mut k: u64 = 0;
    loop {
        let den = &power * BigInt::from(2 * k + 1);
        let term = Interval::from_rational(&BigRational::new(BigInt::one(), den.clone()), prec);
        if den > limit {
            // first omitted term bounds the tail
            return sum.add(&Interval::symmetric(term.hi()), prec);
        }
        sum = if k.is_even() { sum.add(&term, prec) } else { sum.sub(&term, prec) };
        power *= &m2;
        k += 1;
    }
}

/// sin and cos of `y` for an interval `y` inside `[0, 1]`.
fn sin_cos_series(y: &Interval, prec: u32) -> (Interval, Interval) {
    let wp = prec + 16;
    let eps = BigFloat::from_parts(BigInt::one(), -(wp as i64) - 4);
    let y2 = y.square(wp);
    // sin
    let mut term = y.clone();
    let mut sin = Interval::zero();
    let mut k: i64 = 0;
    loop {
        if term.mag() < eps {
            sin = sin.add(&Interval::symmetric(&term.mag()), wp);
            break;
        }
        sin = if k % 2 == 0 { sin.add(&term, wp) } else { sin.sub(&term, wp) };
        let d = Interval::from_int((2 * k + 2) * (2 * k + 3));
        term = term.mul(&y2, wp).div(&d, wp).expect("positive divisor");
        k += 1;
    }
    // cos
    let mut term = Interval::one();
    let mut cos = Interval::zero();
    let mut k: i64 = 0;
    loop {
        if term.mag() < eps {
            cos = cos.add(&Interval::symmetric(&term.mag()), wp);
            break;
        }
        cos = if k % 2 == 0 { cos.add(&term, wp) } else { cos.sub(&term, wp) };
        let d = Interval::from_int((2 * k + 1) * (2 * k + 2));
        term = term.mul(&y2, wp).div(&d, wp).expect("positive divisor");
        k += 1;
    }
    // |sin|, |cos| <= 1 always; clip the series slack.
    (clip_unit(sin), clip_unit(cos))
}

fn clip_unit(iv: Interval) -> Interval {
    let unit = Interval::new(BigFloat::from_int(-1), BigFloat::one());
    iv.intersect(&unit).unwrap_or(iv)
}

/// Exact value of `sin(x*pi)` when it is rational.
fn exact_sin_pi(x: &BigRational) -> Option<BigRational> {
    // x is reduced to [0, 2)
    let twelve = x * BigRational::from_integer(12.into());
    if !twelve.is_integer() {
        return None;
    }
    let k = twelve.to_integer();
    let k: i64 = k.try_into().ok()?;
    let half = BigRational::new(1.into(), 2.into());
    match k {
        0 | 12 => Some(BigRational::zero()),
        6 => Some(BigRational::one()),
        18 => Some(-BigRational::one()),
        2 | 10 => Some(half),
        14 | 22 => Some(-half),
        _ => None,
    }
}

fn reduce_mod2(x: &BigRational) -> BigRational {
    let two = BigRational::from_integer(2.into());
    let q = (x / &two).floor();
    x - q * two
}

/// Exact `(sin(x*pi), cos(x*pi))` where the value is rational.
pub fn exact_sin_cos_pi(x: &BigRational) -> (Option<BigRational>, Option<BigRational>) {
    let x = reduce_mod2(x);
    let half = BigRational::new(1.into(), 2.into());
    (exact_sin_pi(&x), exact_sin_pi(&reduce_mod2(&(&half - &x))))
}

/// Enclosures of `(sin(x*pi), cos(x*pi))` for rational `x`. Rational values
/// (multiples of pi/6 with rational sine or cosine) come back as points.
pub fn sin_cos_pi(x: &BigRational, prec: u32) -> (Interval, Interval) {
    let x = reduce_mod2(x);
    let half = BigRational::new(1.into(), 2.into());
    let exact_s = exact_sin_pi(&x);
    let exact_c = exact_sin_pi(&reduce_mod2(&(&half - &x)));
    if let (Some(s), Some(c)) = (&exact_s, &exact_c) {
        return (Interval::from_rational(s, prec), Interval::from_rational(c, prec));
    }
    let (s, c) = sin_cos_reduced(&x, prec);
    let s = exact_s.map(|v| Interval::from_rational(&v, prec)).unwrap_or(s);
    let c = exact_c.map(|v| Interval::from_rational(&v, prec)).unwrap_or(c);
    (s, c)
}

fn sin_cos_reduced(x: &BigRational, prec: u32) -> (Interval, Interval) {
    let one = BigRational::one();
    let half = BigRational::new(1.into(), 2.into());
    let quarter = BigRational::new(1.into(), 4.into());
    let (mut x, mut sin_sign, mut cos_sign) = (x.clone(), false, false);
    if x >= one {
        x -= &one;
        sin_sign = !sin_sign;
        cos_sign = !cos_sign;
    }
    if x > half {
        x = &one - &x;
        cos_sign = !cos_sign;
    }
    let swap = x > quarter;
    if swap {
        x = &half - &x;
    }
    let wp = prec + 8;
    let y = Interval::from_rational(&x, wp).mul(&pi(wp), wp);
    let (mut s, mut c) = sin_cos_series(&y, prec);
    if swap {
        std::mem::swap(&mut s, &mut c);
    }
    if sin_sign {
        s = s.neg();
    }
    if cos_sign {
        c = c.neg();
    }
    (s, c)
}

/// atan over an interval of non-negative arguments.
pub fn atan(u: &Interval, prec: u32) -> Interval {
    debug_assert!(!u.lo().is_negative());
    let wp = prec + 16;
    // Large arguments: atan(u) = pi/2 - atan(1/u).
    if u.lo() > &BigFloat::one() {
        let inv = u.recip(wp).expect("u > 1");
        return pi(wp).mul_pow2(-1).sub(&atan(&inv, prec), wp);
    }
    if u.hi() > &BigFloat::one() {
        // straddles 1: split at the monotone boundary
        let lo = atan(&Interval::point(u.lo().clone()), prec);
        let hi = atan(&Interval::point(u.hi().clone()), prec);
        return lo.hull(&hi);
    }
    // Halve the angle until the argument is below 1/8.
    let eighth = BigFloat::from_parts(BigInt::one(), -3);
    let mut v = u.clone();
    let mut halvings = 0i64;
    while v.hi() > &eighth {
        let s = Interval::one().add(&v.square(wp), wp).sqrt(wp).expect("positive");
        v = v.div(&Interval::one().add(&s, wp), wp).expect("positive");
        halvings += 1;
    }
    let eps = BigFloat::from_parts(BigInt::one(), -(wp as i64) - 4);
    let v2 = v.square(wp);
    let mut power = v.clone();
    let mut sum = Interval::zero();
    let mut k: i64 = 0;
    loop {
        let term = power.div(&Interval::from_int(2 * k + 1), wp).expect("positive");
        if term.mag() < eps {
            sum = sum.add(&Interval::symmetric(&term.mag()), wp);
            break;
        }
        sum = if k % 2 == 0 { sum.add(&term, wp) } else { sum.sub(&term, wp) };
        power = power.mul(&v2, wp);
        k += 1;
    }
    sum.mul_pow2(halvings)
}

/// Enclosure of `|arg(x + iy)|` in `[0, pi]` for an exact nonzero point.
pub fn abs_arg(x: &BigFloat, y: &BigFloat, prec: u32) -> Interval {
    let wp = prec + 8;
    assert!(!(x.is_zero() && y.is_zero()), "argument of zero");
    let ay = y.abs();
    if ay.is_zero() {
        return if x.is_positive() { Interval::zero() } else { pi(prec) };
    }
    if x.is_zero() {
        return pi(wp).mul_pow2(-1);
    }
    let ax = x.abs();
    let a = if ay <= ax {
        let u = Interval::point(ay).div(&Interval::point(ax), wp).expect("nonzero");
        atan(&u, wp)
    } else {
        let u = Interval::point(ax).div(&Interval::point(ay), wp).expect("nonzero");
        pi(wp).mul_pow2(-1).sub(&atan(&u, wp), wp)
    };
    if x.is_positive() {
        a
    } else {
        pi(wp).sub(&a, wp)
    }
}

/// Enclosure of `(num/den) * pi`.
pub fn rational_pi(q: &BigRational, prec: u32) -> Interval {
    let wp = prec + 4;
    if q.is_zero() {
        return Interval::zero();
    }
    Interval::from_rational(q, wp).mul(&pi(wp), wp)
}
