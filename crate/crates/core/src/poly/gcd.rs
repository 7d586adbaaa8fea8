//! Exact gcd and square-free decomposition.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Polynomial;

/// Monic gcd over the rationals.
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let mut x = primitive(a.integer_coeffs());
    let mut y = primitive(b.integer_coeffs());
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !(y.len() == 1 && !y[0].is_zero()) {
        let r = pseudo_rem(&x, &y);
        if r.is_empty() {
            return from_ints(&y).monic();
        }
        x = y;
        y = primitive(r);
    }
    Polynomial::constant(BigRational::one()).expect("one")
}

/// `true` iff `p` has no repeated root (over the complex numbers).
pub fn is_square_free(p: &Polynomial) -> bool {
    if p.degree() <= 1 {
        return true;
    }
    let dp = p.derivative().expect("degree >= 1");
    if let Some(true) = modular_coprime(p, &dp) {
        return true;
    }
    gcd(p, &dp).is_constant()
}

/// Square-free factors `(f_i, i)` with `p = c * prod f_i^i`, each `f_i` monic
/// and square-free, pairwise coprime. Factors of degree 0 are omitted.
pub fn square_free_decomposition(p: &Polynomial) -> Vec<(Polynomial, usize)> {
    if p.is_constant() {
        return Vec::new();
    }
    if is_square_free(p) {
        return vec![(p.monic(), 1)];
    }
    // Yun's algorithm.
    let dp = p.derivative().expect("non-constant");
    let a0 = gcd(p, &dp);
    let mut b = exact_div(p, &a0);
    let c = exact_div(&dp, &a0);
    let mut d = sub(&c, &b.derivative().ok());
    let mut out = Vec::new();
    let mut i = 1;
    while !b.is_constant() {
        let a = match &d {
            Some(d) => gcd(&b, d),
            None => b.monic(),
        };
        let nb = exact_div(&b, &a);
        if !a.is_constant() {
            out.push((a.monic(), i));
        }
        d = match &d {
            Some(d) => {
                let c = exact_div(d, &a);
                sub(&c, &nb.derivative().ok())
            }
            None => None,
        };
        b = nb;
        i += 1;
    }
    out
}

fn exact_div(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let (q, r) = a.div_rem(b);
    debug_assert!(r.is_none(), "inexact division");
    q.expect("divisor degree <= dividend degree")
}

fn sub(a: &Polynomial, b: &Option<Polynomial>) -> Option<Polynomial> {
    match b {
        Some(b) => a.linear_combination(&BigRational::one(), b, &-BigRational::one()),
        None => Some(a.clone()),
    }
}

fn from_ints(c: &[BigInt]) -> Polynomial {
    Polynomial::new(c.iter().map(|v| BigRational::from_integer(v.clone())).collect()).expect("nonzero")
}

/// Integer polynomial divided by the gcd of its coefficients, with a
/// positive leading coefficient. Trailing zeros are trimmed.
pub(crate) fn primitive(mut c: Vec<BigInt>) -> Vec<BigInt> {
    while c.last().is_some_and(|v| v.is_zero()) {
        c.pop();
    }
    let g = c.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
    if g.is_zero() {
        return c;
    }
    let g = if c.last().expect("nonzero").is_negative() { -g } else { g };
    if !g.is_one() {
        for v in c.iter_mut() {
            *v = &*v / &g;
        }
    }
    c
}

/// `lc(b)^(deg a - deg b + 1) * (a mod b)`, trimmed; empty when zero.
pub(crate) fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    if r.len() <= db {
        return r;
    }
    for k in (db..a.len()).rev() {
        let lr = r[k].clone();
        for v in r[..k].iter_mut() {
            *v *= lb;
        }
        if !lr.is_zero() {
            for (j, bj) in b[..db].iter().enumerate() {
                r[k - db + j] -= &lr * bj;
            }
        }
        r.pop();
    }
    while r.last().is_some_and(|v| v.is_zero()) {
        r.pop();
    }
    r
}

const P: u64 = (1 << 61) - 1;

fn mulm(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn powm(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, a);
        }
        a = mulm(a, a);
        e >>= 1;
    }
    r
}

fn reduce(v: &BigInt) -> u64 {
    v.mod_floor(&BigInt::from(P)).to_u64().expect("reduced")
}

fn trim_mod(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// `Some(true)` when `a` and `b` are certainly coprime over the rationals,
/// `None` when the modular image is inconclusive.
fn modular_coprime(a: &Polynomial, b: &Polynomial) -> Option<bool> {
    let mut x: Vec<u64> = a.integer_coeffs().iter().map(reduce).collect();
    let mut y: Vec<u64> = b.integer_coeffs().iter().map(reduce).collect();
    // A leading coefficient vanishing mod P would make the image degree drop.
    if x.last() == Some(&0) || y.last() == Some(&0) {
        return None;
    }
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    loop {
        trim_mod(&mut y);
        if y.is_empty() {
            return if x.len() == 1 { Some(true) } else { None };
        }
        if y.len() == 1 {
            return Some(true);
        }
        let inv = powm(*y.last().expect("nonempty"), P - 2);
        let dy = y.len() - 1;
        while x.len() > dy {
            let k = x.len() - 1;
            let c = mulm(x[k], inv);
            if c != 0 {
                for (j, &yj) in y.iter().enumerate() {
                    let t = mulm(c, yj);
                    x[k - dy + j] = (x[k - dy + j] + P - t) % P;
                }
            }
            x.pop();
            trim_mod(&mut x);
        }
        std::mem::swap(&mut x, &mut y);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c).unwrap()
    }

    #[test]
    fn gcd_of_shared_factor() {
        // (z+1)(z+2) and (z+1)(z-3)
        let g = gcd(&p(&[2, 3, 1]), &p(&[-3, -2, 1]));
        assert_eq!(g, p(&[1, 1]));
        assert!(gcd(&p(&[1, 0, 1]), &p(&[1, 1])).is_constant());
    }

    #[test]
    fn square_free_detection() {
        assert!(is_square_free(&p(&[1, 1, 1])));
        assert!(!is_square_free(&p(&[1, 2, 3, 2, 1])));
        assert!(!is_square_free(&p(&[0, 0, 1, 1])));
        assert!(is_square_free(&p(&[5])));
    }

    #[test]
    fn yun_recovers_multiplicities() {
        let f = p(&[1, 2, 3, 2, 1]);
        assert_eq!(square_free_decomposition(&f), vec![(p(&[1, 1, 1]), 2)]);
        // (z+1)^3 (z-2)
        let g = Polynomial::from_roots(&[int(-1), int(-1), int(-1), int(2)]);
        let d = square_free_decomposition(&g);
        assert_eq!(d, vec![(p(&[-2, 1]), 1), (p(&[1, 1]), 3)]);
        // z^2 (z+1)
        let h = p(&[0, 0, 1, 1]);
        assert_eq!(square_free_decomposition(&h), vec![(p(&[1, 1]), 1), (p(&[0, 1]), 2)]);
    }
}
