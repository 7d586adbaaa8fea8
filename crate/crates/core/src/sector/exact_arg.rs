//! Recognition of roots `r e^{i pi a/b}` with `r` or `r^2` rational.
//!
//! A candidate is read off the floating-point center by continued fractions,
//! checked to be an exact root by reducing modulo a cyclotomic polynomial,
//! and checked to lie inside the enclosing disk with interval arithmetic.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{trig, BigFloat, CFloat, CInterval, Interval};
use crate::poly::Polynomial;

const MAX_ARG_DEN: u64 = 360;
const MAX_MODULUS_DEN: u64 = 10_000;

enum Modulus {
    Rational(BigRational),
    Sqrt(BigRational),
}

/// Convergents `h/k` of the continued fraction of `x >= 0` with `k <= max_den`.
fn convergents(x: f64, max_den: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    if !(x.is_finite() && x >= 0.0) {
        return out;
    }
    let (mut h0, mut h1) = (0u64, 1u64);
    let (mut k0, mut k1) = (1u64, 0u64);
    let mut v = x;
    for _ in 0..40 {
        let a = v.floor();
        if a > 1e15 {
            break;
        }
        let ai = a as u64;
        let (Some(h2), Some(k2)) = (ai.checked_mul(h1).and_then(|t| t.checked_add(h0)), ai.checked_mul(k1).and_then(|t| t.checked_add(k0)))
        else {
            break;
        };
        if k2 > max_den {
            break;
        }
        out.push((h2, k2));
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = v - a;
        if frac < 1e-12 {
            break;
        }
        v = 1.0 / frac;
    }
    out
}

fn close(x: f64, h: u64, k: u64, rel: f64) -> bool {
    (x - h as f64 / k as f64).abs() <= rel * x.abs().max(1e-300)
}

fn q(n: u64, d: u64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn is_square(v: &BigRational) -> bool {
    let sq = |n: &BigInt| {
        let r = n.sqrt();
        &r * &r == *n
    };
    !v.is_negative() && sq(v.numer()) && sq(v.denom())
}

fn candidate_moduli(m: f64) -> Vec<Modulus> {
    let mut out = Vec::new();
    for (h, k) in convergents(m, MAX_MODULUS_DEN) {
        if h > 0 && close(m, h, k, 1e-9) {
            out.push(Modulus::Rational(q(h, k)));
            break;
        }
    }
    for (h, k) in convergents(m * m, MAX_MODULUS_DEN) {
        if h > 0 && close(m * m, h, k, 1e-9) {
            let v = q(h, k);
            if !is_square(&v) {
                out.push(Modulus::Sqrt(v));
            }
            break;
        }
    }
    out
}

fn cyclotomic(n: u64, memo: &mut HashMap<u64, Polynomial>) -> Polynomial {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    let mut c = vec![BigRational::zero(); n as usize + 1];
    c[0] = -BigRational::one();
    c[n as usize] = BigRational::one();
    let mut p = Polynomial::new(c).expect("nonzero");
    for d in 1..n {
        if n % d == 0 {
            let (quot, _) = p.div_rem(&cyclotomic(d, memo));
            p = quot.expect("divisor of z^n - 1");
        }
    }
    memo.insert(n, p.clone());
    p
}

fn vanishes_mod(c: Vec<BigRational>, phi: &Polynomial) -> bool {
    match Polynomial::new(c) {
        Err(_) => true,
        Ok(p) => p.div_rem(phi).1.is_none(),
    }
}

const MAX_FIELD_ORDER: u64 = 2048;

fn lcm(a: u64, b: u64) -> u64 {
    a / a.gcd(&b) * b
}

fn prime_factors(mut d: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= d {
        if d % p == 0 {
            out.push(p);
            while d % p == 0 {
                d /= p;
            }
        }
        p += 1;
    }
    if d > 1 {
        out.push(d);
    }
    out
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// Elements of `Q(zeta_M)` as coefficient vectors in `x = zeta_M`.
struct Field {
    order: u64,
    phi: Polynomial,
}

impl Field {
    fn monomial(&self, e: u64) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); self.order as usize];
        v[(e % self.order) as usize] = BigRational::one();
        v
    }

    fn mul(&self, a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let m = self.order as usize;
        let mut out = vec![BigRational::zero(); m];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                out[(i + j) % m] += x * y;
            }
        }
        out
    }

    fn is_zero(&self, v: Vec<BigRational>) -> bool {
        vanishes_mod(v, &self.phi)
    }

    fn eval_f64(&self, v: &[BigRational]) -> (f64, f64) {
        let t = 2.0 * std::f64::consts::PI / self.order as f64;
        v.iter().enumerate().fold((0.0, 0.0), |(re, im), (e, c)| {
            let c = crate::poly::rational_to_f64(c);
            (re + c * (t * e as f64).cos(), im + c * (t * e as f64).sin())
        })
    }
}

/// `sqrt(d)` for square-free `d > 1` as an element of `Q(zeta_M)`, where `M`
/// is a multiple of `4`, `8` when `d` is even, and every odd prime of `d`.
fn sqrt_in_field(field: &Field, primes: &[u64], d: u64) -> Option<Vec<BigRational>> {
    let m = field.order;
    let mut s = field.monomial(0);
    for &p in primes {
        let g = if p == 2 {
            let mut v = field.monomial(m / 8);
            v[(7 * m / 8) as usize] += BigRational::one();
            v
        } else {
            // quadratic Gauss sum, equal to sqrt(p) or i sqrt(p)
            let mut v = vec![BigRational::zero(); m as usize];
            for a in 1..p {
                let chi = if pow_mod(a, (p - 1) / 2, p) == 1 { 1 } else { -1 };
                v[(a * (m / p)) as usize] += BigRational::from_integer(chi.into());
            }
            v
        };
        s = field.mul(&s, &g);
    }
    // fix the unit so that s = +sqrt(d)
    let (re, im) = field.eval_f64(&s);
    let root = (d as f64).sqrt();
    for j in 0..4 {
        let unit = field.monomial(j * m / 4);
        let (ur, ui) = field.eval_f64(&unit);
        let (vr, vi) = (re * ur - im * ui, re * ui + im * ur);
        if (vr - root).abs() < 1e-6 * root && vi.abs() < 1e-6 * root {
            return Some(field.mul(&s, &unit));
        }
    }
    None
}

/// `f(r e^{i pi a/b}) == 0` exactly, with `a/b` in lowest terms.
fn is_exact_root(f: &Polynomial, modulus: &Modulus, a: u64, b: u64, memo: &mut HashMap<u64, Polynomial>) -> bool {
    let g = a.gcd(&(2 * b));
    let (k, n) = (a / g, 2 * b / g);
    match modulus {
        Modulus::Rational(r) => {
            let phi = cyclotomic(n, memo);
            let mut acc = vec![BigRational::zero(); n as usize];
            let mut power = BigRational::one();
            for (j, cj) in f.coeffs().iter().enumerate() {
                acc[((j as u64 * k) % n) as usize] += cj * &power;
                power *= r;
            }
            vanishes_mod(acc, &phi)
        }
        Modulus::Sqrt(v) => {
            // sqrt(v) = (s / den) sqrt(d) with d square-free
            let Some(prod) = (v.numer() * v.denom()).to_u64() else { return false };
            let primes = prime_factors(prod);
            let d: u64 = primes.iter().filter(|&&p| {
                let mut e = 0;
                let mut t = prod;
                while t % p == 0 {
                    t /= p;
                    e += 1;
                }
                e % 2 == 1
            }).product();
            let d_primes: Vec<u64> = prime_factors(d);
            let mut order = lcm(n, 4);
            for &p in &d_primes {
                order = lcm(order, if p == 2 { 8 } else { p });
            }
            if order > MAX_FIELD_ORDER {
                return false;
            }
            let field = Field { order, phi: cyclotomic(order, memo) };
            let Some(sqrt_d) = sqrt_in_field(&field, &d_primes, d) else { return false };
            let scale = BigRational::new(BigInt::from(prod / d).sqrt(), v.denom().clone());
            let step = order / n;
            let mut even = vec![BigRational::zero(); order as usize];
            let mut odd_part = vec![BigRational::zero(); order as usize];
            let mut power = BigRational::one();
            for (j, cj) in f.coeffs().iter().enumerate() {
                let e = (((j as u64 * k) % n) * step) as usize;
                // r^j = v^(j/2), or v^((j-1)/2) r
                if j % 2 == 0 {
                    even[e] += cj * &power;
                } else {
                    odd_part[e] += cj * &power;
                    power *= v;
                }
            }
            let r: Vec<BigRational> = sqrt_d.iter().map(|c| c * &scale).collect();
            let total: Vec<BigRational> =
                even.iter().zip(field.mul(&r, &odd_part)).map(|(x, y)| x + y).collect();
            field.is_zero(total)
        }
    }
}

fn inside_disk(modulus: &Modulus, s: &BigRational, center: &CFloat, radius: &BigFloat) -> bool {
    let prec = 128;
    let r = match modulus {
        Modulus::Rational(r) => Interval::from_rational(r, prec),
        Modulus::Sqrt(v) => match Interval::from_rational(v, prec).sqrt(prec) {
            Some(r) => r,
            None => return false,
        },
    };
    let (sin, cos) = trig::sin_cos_pi(s, prec);
    let w = CInterval::new(r.mul(&cos, prec), r.mul(&sin.abs(), prec));
    let c = CInterval::point(&CFloat::new(center.re.clone(), center.im.abs()));
    w.sub(&c, prec).abs(prec).hi() <= radius
}

/// A point with rational coordinates has a rational `arg / pi` only on the
/// axes and diagonals.
fn dyadic_arg(c: &CFloat) -> Option<BigRational> {
    let (x, y) = (&c.re, c.im.abs());
    if y.is_zero() {
        return (!x.is_zero()).then(|| BigRational::from_integer(i64::from(x.is_negative()).into()));
    }
    if x.is_zero() {
        return Some(q(1, 2));
    }
    if x.abs() == y {
        return Some(if x.is_negative() { q(3, 4) } else { q(1, 4) });
    }
    None
}

/// `|arg w| / pi` for the root `w` of `f` inside the disk, when recognised.
pub(crate) fn recognize(f: &Polynomial, center: &CFloat, radius: &BigFloat) -> Option<BigRational> {
    if radius.is_zero() {
        return dyadic_arg(center);
    }
    let (re, im) = center.to_f64();
    let m = re.hypot(im);
    if m == 0.0 || !m.is_finite() {
        return None;
    }
    let x = im.abs().atan2(re) / std::f64::consts::PI;
    let slack = 1e-9 + radius.to_f64() / m;
    let mut memo = HashMap::new();
    for (a, b) in convergents(x, MAX_ARG_DEN) {
        if a == 0 || a >= b || (x - a as f64 / b as f64).abs() > slack {
            continue;
        }
        let s = q(a, b);
        for modulus in candidate_moduli(m) {
            if is_exact_root(f, &modulus, a, b, &mut memo) && inside_disk(&modulus, &s, center, radius) {
                return Some(s);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        let mut memo = HashMap::new();
        assert_eq!(cyclotomic(1, &mut memo).to_string(), "z-1");
        assert_eq!(cyclotomic(3, &mut memo).to_string(), "z^2+z+1");
        assert_eq!(cyclotomic(8, &mut memo).to_string(), "z^4+1");
        assert_eq!(cyclotomic(12, &mut memo).degree(), 4);
        assert_eq!(cyclotomic(360, &mut memo).degree(), 96);
    }

    #[test]
    fn convergents_of_simple_values() {
        let c = convergents(2.0 / 3.0, 360);
        assert_eq!(c.last(), Some(&(2, 3)));
        let c = convergents(std::f64::consts::PI, 1000);
        assert!(c.contains(&(355, 113)));
    }

    #[test]
    fn exact_root_test() {
        let mut memo = HashMap::new();
        let f = Polynomial::from_ints(&[1, 1, 1]).unwrap();
        assert!(is_exact_root(&f, &Modulus::Rational(q(1, 1)), 2, 3, &mut memo));
        assert!(!is_exact_root(&f, &Modulus::Rational(q(1, 1)), 1, 3, &mut memo));
        let g = Polynomial::from_ints(&[2, 2, 1]).unwrap();
        assert!(is_exact_root(&g, &Modulus::Sqrt(q(2, 1)), 3, 4, &mut memo));
        assert!(!is_exact_root(&g, &Modulus::Sqrt(q(3, 1)), 3, 4, &mut memo));
        // 1/2 + i sqrt(3)/2 has modulus 1; sqrt(3) e^{i pi/6} = 3/2 + i sqrt(3)/2
        let h = Polynomial::from_ints(&[3, -3, 1]).unwrap();
        assert!(is_exact_root(&h, &Modulus::Sqrt(q(3, 1)), 1, 6, &mut memo));
        let h = Polynomial::from_ints(&[12, -6, 1]).unwrap();
        assert!(is_exact_root(&h, &Modulus::Sqrt(q(12, 1)), 1, 6, &mut memo));
        let h = Polynomial::from_ints(&[3, -6, 4]).unwrap();
        assert!(is_exact_root(&h, &Modulus::Sqrt(q(3, 4)), 1, 6, &mut memo));
    }
}
