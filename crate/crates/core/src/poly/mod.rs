//! Exact univariate polynomials with rational coefficients.

mod angle;
mod certified;
pub(crate) mod gcd;

pub use angle::Angle;
pub use certified::{
    certified_from_ints, critical_ray_components, ray_components, rotated_ray_derivatives, CertifiedCoeff,
    CertifiedPoly, RayPart,
};
pub use gcd::{gcd, is_square_free, square_free_decomposition};

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{CInterval, Interval};
use crate::error::{Error, Result};

/// A nonzero polynomial `a_0 + a_1 z + ... + a_n z^n` with exact rational
/// coefficients, stored in ascending order with `a_n != 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<BigRational>,
}

/// Result of [`Polynomial::is_nonneg`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Nonnegativity {
    /// Every coefficient is `>= 0`.
    pub nonneg: bool,
    /// Every coefficient is `> 0`.
    pub strict: bool,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

impl Polynomial {
    /// Builds a polynomial from ascending coefficients, trimming trailing
    /// zeros.
    pub fn new(mut coeffs: Vec<BigRational>) -> Result<Self> {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(Polynomial { coeffs })
    }

    pub fn from_ints(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn constant(c: BigRational) -> Result<Self> {
        Self::new(vec![c])
    }

    /// `prod (z - r)` over the given roots.
    pub fn from_roots(roots: &[BigRational]) -> Self {
        let mut p = Polynomial { coeffs: vec![BigRational::one()] };
        for r in roots {
            p = p.mul(&Polynomial { coeffs: vec![-r.clone(), BigRational::one()] });
        }
        p
    }

    /// The monomial `z`.
    pub fn z() -> Self {
        Polynomial { coeffs: vec![BigRational::zero(), BigRational::one()] }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self) -> &BigRational {
        self.coeffs.last().expect("nonzero polynomial")
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// Formal derivative; the degree drops by exactly one.
    pub fn derivative(&self) -> Result<Self> {
        if self.is_constant() {
            return Err(Error::DegreeZero);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, a)| a * BigRational::from_integer(k.into()))
            .collect();
        Self::new(coeffs)
    }

    /// Sign pattern of the coefficients.
    pub fn is_nonneg(&self) -> Nonnegativity {
        let nonneg = self.coeffs.iter().all(|c| !c.is_negative());
        let strict = nonneg && self.coeffs.iter().all(|c| c.is_positive());
        Nonnegativity { nonneg, strict }
    }

    /// Exact value at a rational point.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Enclosure of the value at every point of a complex enclosure (Horner
    /// scheme with outward rounding).
    pub fn evaluate_complex(&self, z: &CInterval, prec: u32) -> CInterval {
        let mut acc = CInterval::zero();
        for c in self.coeffs.iter().rev() {
            let c = CInterval::from_real(Interval::from_rational(c, prec));
            acc = acc.mul(z, prec).add(&c, prec);
        }
        acc
    }

    /// Enclosure of the value over a real interval.
    pub fn evaluate_interval(&self, x: &Interval, prec: u32) -> Interval {
        let mut acc = Interval::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x, prec).add(&Interval::from_rational(c, prec), prec);
        }
        acc
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial { coeffs: out }
    }

    /// `c * self`; `c` must be nonzero.
    pub fn scale(&self, c: &BigRational) -> Self {
        assert!(!c.is_zero(), "scaling by zero");
        Polynomial { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// `a * self + b * other`, `None` when the result vanishes identically.
    pub fn linear_combination(&self, a: &BigRational, other: &Self, b: &BigRational) -> Option<Self> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| a * self.coeff(k) + b * other.coeff(k)).collect();
        Self::new(coeffs).ok()
    }

    /// `a_k -> a_k s^k`, i.e. `p(s z)`.
    pub fn substitute_scale(&self, s: &BigRational) -> Self {
        let mut pow = BigRational::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            coeffs.push(a * &pow);
            pow *= s;
        }
        Polynomial { coeffs }
    }

    /// Number of trailing-from-below zero coefficients, i.e. the multiplicity
    /// of the root at the origin.
    pub fn zero_root_multiplicity(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// `self / z^k` where `k` is the multiplicity of the root at zero.
    pub fn strip_zero_root(&self) -> Self {
        let k = self.zero_root_multiplicity();
        Polynomial { coeffs: self.coeffs[k..].to_vec() }
    }

    /// Quotient and remainder of exact division.
    pub fn div_rem(&self, divisor: &Self) -> (Option<Self>, Option<Self>) {
        let mut rem = self.coeffs.clone();
        let dd = divisor.degree();
        let lc = divisor.leading();
        if self.degree() < dd {
            return (None, Some(self.clone()));
        }
        let mut quot = vec![BigRational::zero(); self.degree() - dd + 1];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / lc;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * d;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot).ok(), Self::new(rem).ok())
    }

    /// Monic associate.
    pub fn monic(&self) -> Self {
        let lc = self.leading().clone();
        Polynomial { coeffs: self.coeffs.iter().map(|c| c / &lc).collect() }
    }

    /// Integer coefficients with the same roots (scaled by the lcm of the
    /// denominators, not made primitive).
    pub fn integer_coeffs(&self) -> Vec<BigInt> {
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| num_integer::lcm(acc, c.denom().clone()));
        self.coeffs.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(rational_to_f64).collect()
    }

    /// Canonical comma-separated ascending form, e.g. `1,2,3/2`.
    pub fn to_coeff_string(&self) -> String {
        self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    }
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    crate::arith::BigFloat::from_rational(q, 64, crate::arith::Round::Down).to_f64()
}

impl fmt::Display for Polynomial {
    /// Monomial form in `z`, highest power first, e.g. `z^2+2z+1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = k == 0 || !mag.is_one();
            if show_coeff {
                if mag.is_integer() || k == 0 {
                    write!(f, "{mag}")?;
                } else {
                    write!(f, "({mag})")?;
                }
            }
            match k {
                0 => {}
                1 => write!(f, "z")?,
                _ => write!(f, "z^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{}]", self.to_coeff_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::BigFloat;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c).unwrap()
    }

    #[test]
    fn construction_trims_trailing_zeros() {
        assert_eq!(p(&[1, 2, 1]).degree(), 2);
        let q = p(&[1, 2, 0]);
        assert_eq!(q.degree(), 1);
        assert_eq!(q.coeffs(), &[int(1), int(2)]);
        assert_eq!(Polynomial::from_ints(&[0, 0]), Err(Error::ZeroPolynomial));
        assert_eq!(Polynomial::new(vec![]), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn derivative_follows_power_rule() {
        assert_eq!(p(&[4, 5, 0, 1]).derivative().unwrap(), p(&[5, 0, 3]));
        assert_eq!(p(&[1, 2, 3, 2, 1]).derivative().unwrap(), p(&[2, 6, 6, 4]));
        assert_eq!(p(&[7]).derivative(), Err(Error::DegreeZero));
    }

    #[test]
    fn second_derivative_drops_two_degrees() {
        let q = p(&[3, -1, 4, 1, -5, 9]);
        let d2 = q.derivative().unwrap().derivative().unwrap();
        assert_eq!(d2.degree(), 3);
        // (k+2)(k+1) a_{k+2}
        assert_eq!(d2, p(&[8, 6, -60, 180]));
    }

    #[test]
    fn nonnegativity_flags() {
        assert_eq!(p(&[1, 2, 1]).is_nonneg(), Nonnegativity { nonneg: true, strict: true });
        assert_eq!(p(&[1, 0, 1]).is_nonneg(), Nonnegativity { nonneg: true, strict: false });
        assert_eq!(p(&[1, -1]).is_nonneg(), Nonnegativity { nonneg: false, strict: false });
    }

    #[test]
    fn complex_evaluation_encloses_value() {
        let i = CInterval::new(Interval::zero(), Interval::one());
        let v = p(&[1, 1, 1]).evaluate_complex(&i, 64);
        assert!(v.re.contains(&BigFloat::zero()) && v.im.contains(&BigFloat::one()));
        let m1 = CInterval::from_real(Interval::from_int(-1));
        assert!(p(&[1, 2, 1]).evaluate_complex(&m1, 64).contains_zero());
        let z0 = CInterval::zero();
        assert!(p(&[1, 1]).evaluate_complex(&z0, 64).re.contains(&BigFloat::one()));
    }

    #[test]
    fn division_with_remainder() {
        let a = p(&[-1, 0, 0, 1]);
        let b = p(&[-1, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.unwrap(), p(&[1, 1, 1]));
        assert!(r.is_none());
        let (_, r) = p(&[1, 0, 1]).div_rem(&b);
        assert_eq!(r.unwrap(), p(&[2]));
    }

    #[test]
    fn display_forms() {
        assert_eq!(p(&[1, 2, 3, 2, 1]).to_string(), "z^4+2z^3+3z^2+2z+1");
        assert_eq!(p(&[0, -1, 0, 1]).to_string(), "z^3-z");
        let q = Polynomial::new(vec![rat(1, 2), int(0), rat(-3, 4)]).unwrap();
        assert_eq!(q.to_string(), "-(3/4)z^2+1/2");
        assert_eq!(q.to_coeff_string(), "1/2,0,-3/4");
    }
}
