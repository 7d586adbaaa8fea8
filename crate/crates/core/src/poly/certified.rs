//! Real polynomials with adaptively refined coefficient enclosures.

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;

use super::{Angle, Polynomial};
use crate::arith::{trig, Interval};
use crate::error::{Error, Result};
use crate::precision;

/// Enclosure of one coefficient. `exact_zero` is set only when the value is
/// known symbolically to vanish.
#[derive(Clone, Debug, PartialEq)]
pub struct CertifiedCoeff {
    pub enclosure: Interval,
    pub exact_zero: bool,
    exact: Option<BigRational>,
}

impl CertifiedCoeff {
    fn exact(q: BigRational, prec: u32) -> Self {
        CertifiedCoeff { enclosure: Interval::from_rational(&q, prec), exact_zero: q.is_zero(), exact: Some(q) }
    }

    fn approx(enclosure: Interval) -> Self {
        CertifiedCoeff { enclosure, exact_zero: false, exact: None }
    }

    /// Certified sign, `None` while the enclosure still straddles zero.
    pub fn sign(&self) -> Option<i32> {
        if self.exact_zero {
            return Some(0);
        }
        match self.enclosure.sign() {
            Some(0) | None => None,
            s => s,
        }
    }

    /// The exact rational value, when known.
    pub fn exact_value(&self) -> Option<&BigRational> {
        self.exact.as_ref()
    }
}

/// Which component of `p(t e^{i theta})` or `p'(t e^{i theta})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RayPart {
    /// `Im p(t e^{i theta})`
    G1,
    /// `Re p(t e^{i theta})`
    G2,
    /// `Im p'(t e^{i theta})`
    H1,
    /// `Re p'(t e^{i theta})`
    H2,
}

#[derive(Debug, PartialEq)]
enum Source {
    Exact(Vec<BigRational>),
    Ray { a: Vec<BigRational>, theta: Angle, part: RayPart },
    Derivative(Arc<Source>),
    Window { inner: Arc<Source>, start: usize, len: usize },
}

impl Source {
    fn len(&self) -> usize {
        match self {
            Source::Exact(c) => c.len(),
            Source::Ray { a, part, .. } => match part {
                RayPart::G1 | RayPart::G2 => a.len(),
                RayPart::H1 | RayPart::H2 => (a.len() - 1).max(1),
            },
            Source::Derivative(s) => (s.len() - 1).max(1),
            Source::Window { len, .. } => *len,
        }
    }

    fn coeff(&self, j: usize, prec: u32) -> CertifiedCoeff {
        match self {
            Source::Exact(c) => CertifiedCoeff::exact(c[j].clone(), prec),
            Source::Ray { a, theta, part } => {
                let (factor, sine) = match part {
                    RayPart::G1 => (a[j].clone(), true),
                    RayPart::G2 => (a[j].clone(), false),
                    RayPart::H1 | RayPart::H2 => {
                        let f = a.get(j + 1).map(|v| v * BigRational::from_integer((j + 1).into()));
                        (f.unwrap_or_else(BigRational::zero), *part == RayPart::H1)
                    }
                };
                ray_coeff(&factor, theta, j as u64, sine, prec)
            }
            Source::Derivative(s) => {
                if s.len() <= 1 {
                    return CertifiedCoeff::exact(BigRational::zero(), prec);
                }
                let k = (j + 1) as i64;
                let c = s.coeff(j + 1, prec + 8);
                match c.exact {
                    Some(q) => CertifiedCoeff::exact(q * BigRational::from_integer(k.into()), prec),
                    None => CertifiedCoeff::approx(c.enclosure.mul(&Interval::from_int(k), prec)),
                }
            }
            Source::Window { inner, start, .. } => inner.coeff(start + j, prec),
        }
    }
}

/// `factor * sin(k theta)` or `factor * cos(k theta)`.
fn ray_coeff(factor: &BigRational, theta: &Angle, k: u64, sine: bool, prec: u32) -> CertifiedCoeff {
    let vanishes = if sine { theta.multiple_is_integer(k) } else { theta.multiple_is_half_odd(k) };
    if factor.is_zero() || vanishes {
        return CertifiedCoeff::exact(BigRational::zero(), prec);
    }
    let x = BigRational::new((k as u128 * theta.num() as u128).into(), theta.den().into());
    let (es, ec) = trig::exact_sin_cos_pi(&x);
    if let Some(v) = if sine { es } else { ec } {
        return CertifiedCoeff::exact(factor * v, prec);
    }
    let wp = prec + 8;
    let (s, c) = trig::sin_cos_pi(&x, wp);
    let t = if sine { s } else { c };
    CertifiedCoeff::approx(Interval::from_rational(factor, wp).mul(&t, prec))
}

/// A real polynomial in `t` whose coefficients are enclosures that can be
/// recomputed at any precision.
#[derive(Clone, Debug)]
pub struct CertifiedPoly {
    coeffs: Vec<CertifiedCoeff>,
    prec: u32,
    source: Arc<Source>,
}

impl PartialEq for CertifiedPoly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl CertifiedPoly {
    fn build(source: Arc<Source>, prec: u32) -> Self {
        let coeffs = (0..source.len()).map(|j| source.coeff(j, prec)).collect();
        CertifiedPoly { coeffs, prec, source }
    }

    /// Exact rational coefficients, ascending.
    pub fn from_rationals(c: &[BigRational]) -> Self {
        let c = if c.is_empty() { vec![BigRational::zero()] } else { c.to_vec() };
        Self::build(Arc::new(Source::Exact(c)), precision::START_BITS)
    }

    pub fn from_polynomial(p: &Polynomial) -> Self {
        Self::from_rationals(p.coeffs())
    }

    fn ray(p: &Polynomial, theta: Angle, part: RayPart) -> Self {
        let source = Source::Ray { a: p.coeffs().to_vec(), theta, part };
        Self::build(Arc::new(source), precision::START_BITS)
    }

    pub fn coeffs(&self) -> &[CertifiedCoeff] {
        &self.coeffs
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    /// Number of stored coefficients (formal degree + 1).
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Index of the highest coefficient not known to vanish; `None` for the
    /// identically zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.exact_zero)
    }

    pub fn is_identically_zero(&self) -> bool {
        self.degree().is_none()
    }

    /// Multiplicity of `t = 0` as a root: the number of low coefficients known
    /// to vanish.
    pub fn zero_root_multiplicity(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.exact_zero).count()
    }

    /// `self / t^k` with `k` the multiplicity of the root at zero, and trailing
    /// exact zeros dropped. The result has a nonzero constant term and a
    /// nonzero leading coefficient. `None` when identically zero.
    pub fn without_zero_root(&self) -> Option<Self> {
        let top = self.degree()?;
        let start = self.zero_root_multiplicity();
        if start == 0 && top + 1 == self.len() {
            return Some(self.clone());
        }
        let source = Source::Window { inner: self.source.clone(), start, len: top + 1 - start };
        let coeffs = self.coeffs[start..=top].to_vec();
        Some(CertifiedPoly { coeffs, prec: self.prec, source: Arc::new(source) })
    }

    /// Recomputes every coefficient at `prec` bits.
    pub fn at_precision(&self, prec: u32) -> Self {
        Self::build(self.source.clone(), prec)
    }

    /// Doubles the precision; each new enclosure is intersected with the old
    /// one, so enclosures never widen.
    pub fn refine(&self) -> Self {
        let mut next = self.at_precision(self.prec * 2);
        for (new, old) in next.coeffs.iter_mut().zip(&self.coeffs) {
            if let Some(iv) = new.enclosure.intersect(&old.enclosure) {
                new.enclosure = iv;
            }
        }
        next
    }

    /// Formal derivative in `t`.
    pub fn derivative(&self) -> Self {
        Self::build(Arc::new(Source::Derivative(self.source.clone())), self.prec)
    }

    /// Exact rational coefficients when every coefficient is known exactly.
    pub fn exact_rationals(&self) -> Option<Vec<BigRational>> {
        self.coeffs.iter().map(|c| c.exact.clone()).collect()
    }

    /// Refines until every coefficient not known to vanish has a certified
    /// sign. Such coefficients are nonzero by construction, so this succeeds
    /// unless the precision ceiling is too low.
    pub fn with_resolved_signs(&self) -> Result<Self> {
        let mut cur = self.clone();
        loop {
            if cur.coeffs.iter().all(|c| c.sign().is_some()) {
                return Ok(cur);
            }
            if cur.prec >= precision::ceiling() {
                return Err(Error::SignIndeterminate { bits: cur.prec });
            }
            cur = cur.refine();
        }
    }

    /// Enclosure of the value on an interval of `t`.
    pub fn eval(&self, t: &Interval) -> Interval {
        let mut acc = Interval::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(t, self.prec).add(&c.enclosure, self.prec);
        }
        acc
    }

    /// Certified sign at a rational point, refining as needed. A zero sign
    /// is returned only when it is proven (exact evaluation).
    pub fn sign_at(&self, t: &BigRational) -> Result<i32> {
        if let Some(c) = self.exact_rationals() {
            let mut acc = BigRational::zero();
            for a in c.iter().rev() {
                acc = acc * t + a;
            }
            return Ok(num_traits::Signed::signum(&acc).to_integer().try_into().expect("sign"));
        }
        let mut cur = self.clone();
        loop {
            let v = cur.eval(&Interval::from_rational(t, cur.prec));
            if let Some(s) = v.sign() {
                return Ok(s);
            }
            if cur.prec >= precision::ceiling() {
                return Err(Error::SignIndeterminate { bits: cur.prec });
            }
            cur = cur.refine();
        }
    }

    /// Double-precision midpoints of the coefficients.
    pub fn to_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.enclosure.mid_f64()).collect()
    }
}

/// `(g1, g2)` with `g1(t) = Im p(t e^{i theta})` and `g2(t) = Re p(t e^{i theta})`.
pub fn ray_components(p: &Polynomial, theta: Angle) -> (CertifiedPoly, CertifiedPoly) {
    (CertifiedPoly::ray(p, theta, RayPart::G1), CertifiedPoly::ray(p, theta, RayPart::G2))
}

/// `(h1, h2)` with `h1(t) = Im p'(t e^{i theta})` and `h2(t) = Re p'(t e^{i theta})`.
pub fn critical_ray_components(p: &Polynomial, theta: Angle) -> Result<(CertifiedPoly, CertifiedPoly)> {
    if p.is_constant() {
        return Err(Error::DegreeZero);
    }
    Ok((CertifiedPoly::ray(p, theta, RayPart::H1), CertifiedPoly::ray(p, theta, RayPart::H2)))
}

/// `(g1' cos theta - g2' sin theta, g1' sin theta + g2' cos theta)` evaluated
/// coefficientwise at `prec` bits; equals `(h1, h2)`.
pub fn rotated_ray_derivatives(p: &Polynomial, theta: Angle, prec: u32) -> (Vec<Interval>, Vec<Interval>) {
    let (g1, g2) = ray_components(p, theta);
    let d1 = g1.at_precision(prec).derivative();
    let d2 = g2.at_precision(prec).derivative();
    let (s, c) = theta.sin_cos_multiple(1, prec);
    let first = d1
        .coeffs()
        .iter()
        .zip(d2.coeffs())
        .map(|(a, b)| a.enclosure.mul(&c, prec).sub(&b.enclosure.mul(&s, prec), prec))
        .collect();
    let second = d1
        .coeffs()
        .iter()
        .zip(d2.coeffs())
        .map(|(a, b)| a.enclosure.mul(&s, prec).add(&b.enclosure.mul(&c, prec), prec))
        .collect();
    (first, second)
}

impl From<&Polynomial> for CertifiedPoly {
    fn from(p: &Polynomial) -> Self {
        CertifiedPoly::from_polynomial(p)
    }
}

/// Shorthand used by tests and examples: `[1, -3, 2]` is `1 - 3t + 2t^2`.
pub fn certified_from_ints(c: &[i64]) -> CertifiedPoly {
    let c: Vec<BigRational> = c.iter().map(|&v| BigRational::from_integer(v.into())).collect();
    CertifiedPoly::from_rationals(&c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat};

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c).unwrap()
    }

    fn angle(n: u64, d: u64) -> Angle {
        Angle::new(n, d).unwrap()
    }

    fn exact(cp: &CertifiedPoly) -> Vec<BigRational> {
        cp.exact_rationals().expect("exact coefficients")
    }

    #[test]
    fn ray_components_at_right_angle() {
        let (g1, g2) = ray_components(&p(&[1, 1, 1]), angle(1, 2));
        assert_eq!(exact(&g1), vec![int(0), int(1), int(0)]);
        assert!(g1.coeffs()[2].exact_zero && g1.coeffs()[0].exact_zero);
        assert_eq!(g1.degree(), Some(1));
        assert_eq!(exact(&g2), vec![int(1), int(0), int(-1)]);

        let (g1, g2) = ray_components(&p(&[1, 4, 6, 4, 1]), angle(1, 2));
        assert_eq!(exact(&g1), vec![int(0), int(4), int(0), int(-4), int(0)]);
        assert_eq!(exact(&g2), vec![int(1), int(0), int(-6), int(0), int(1)]);
    }

    #[test]
    fn ray_components_at_pi() {
        let (g1, g2) = ray_components(&p(&[1, 1]), Angle::pi());
        assert!(g1.is_identically_zero());
        assert_eq!(exact(&g2), vec![int(1), int(-1)]);
    }

    #[test]
    fn critical_components() {
        let (h1, h2) = critical_ray_components(&p(&[1, 1, 1]), angle(1, 2)).unwrap();
        assert_eq!(exact(&h1), vec![int(0), int(2)]);
        assert_eq!(exact(&h2), vec![int(1), int(0)]);
        assert!(h2.coeffs()[1].exact_zero);

        let (h1, h2) = critical_ray_components(&p(&[1, 2, 3, 2, 1]), angle(1, 2)).unwrap();
        assert_eq!(exact(&h1), vec![int(0), int(6), int(0), int(-4)]);
        assert_eq!(exact(&h2), vec![int(2), int(0), int(-6), int(0)]);

        let (h1, h2) = critical_ray_components(&p(&[1, 1]), angle(2, 7)).unwrap();
        assert!(h1.is_identically_zero());
        assert_eq!(exact(&h2), vec![int(1)]);
        assert_eq!(critical_ray_components(&p(&[3]), angle(1, 2)), Err(Error::DegreeZero));
    }

    #[test]
    fn irrational_coefficients_are_enclosed() {
        let (g1, g2) = ray_components(&p(&[1, 4, 6, 4, 1]), angle(3, 5));
        let signs: Vec<_> = g1.coeffs()[1..].iter().map(|c| c.sign().unwrap()).collect();
        assert_eq!(signs, vec![1, -1, -1, 1]);
        let (lo, hi) = g2.coeffs()[1].enclosure.to_f64_pair();
        let want = 4.0 * (3.0 * std::f64::consts::PI / 5.0).cos();
        assert!(lo <= want + 1e-15 && want - 1e-15 <= hi);
        assert!(g1.exact_rationals().is_none());
    }

    #[test]
    fn refinement_never_widens() {
        let (g1, _) = ray_components(&p(&[2, 3, 5, 7]), angle(2, 7));
        let r = g1.refine();
        assert_eq!(r.precision(), 128);
        for (a, b) in r.coeffs().iter().zip(g1.coeffs()) {
            assert!(a.enclosure.lo() >= b.enclosure.lo() && a.enclosure.hi() <= b.enclosure.hi());
        }
    }

    #[test]
    fn rotation_identity_holds() {
        let q = Polynomial::new(vec![rat(1, 3), int(2), rat(5, 7), int(1), rat(1, 2)]).unwrap();
        let theta = angle(3, 11);
        let (h1, h2) = critical_ray_components(&q, theta).unwrap();
        let (h1, h2) = (h1.at_precision(256), h2.at_precision(256));
        let (r1, r2) = rotated_ray_derivatives(&q, theta, 256);
        for (h, r) in [(&h1, &r1), (&h2, &r2)] {
            assert_eq!(h.len(), r.len());
            for (a, b) in h.coeffs().iter().zip(r) {
                assert!(a.enclosure.overlaps(b));
            }
        }
    }

    #[test]
    fn signs_at_points() {
        let cp = certified_from_ints(&[2, -3, 1]);
        assert_eq!(cp.sign_at(&int(1)).unwrap(), 0);
        assert_eq!(cp.sign_at(&rat(3, 2)).unwrap(), -1);
        let (g1, _) = ray_components(&p(&[1, 4, 6, 4, 1]), angle(3, 5));
        assert_eq!(g1.sign_at(&rat(1, 10)).unwrap(), 1);
    }

    #[test]
    fn zero_root_is_divided_out() {
        let (g1, _) = ray_components(&p(&[1, 4, 6, 4, 1]), angle(1, 2));
        let core = g1.without_zero_root().unwrap();
        assert_eq!(exact(&core), vec![int(4), int(0), int(-4)]);
        assert_eq!(exact(&core.refine()), vec![int(4), int(0), int(-4)]);
        let (g1, _) = ray_components(&p(&[1, 1]), Angle::pi());
        assert!(g1.without_zero_root().is_none());
    }

    #[test]
    fn derivative_scales_by_index() {
        let d = certified_from_ints(&[4, 5, 0, 1]).derivative();
        assert_eq!(exact(&d), vec![int(5), int(0), int(3)]);
        let (g1, _) = ray_components(&p(&[1, 1, 1]), angle(1, 3));
        assert!(g1.derivative().coeffs()[0].sign() == Some(1));
    }
}
