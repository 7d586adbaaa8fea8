//! Interlacing of real zero sets and the linear combinations `a u + b v`,
//! `c u - d v`.

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::count::{isolate_positive_zeros, isolate_real_zeros, refine_interval, IsolatingInterval};
use crate::error::{Error, Result};
use crate::poly::{CertifiedPoly, Polynomial};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ZeroPoint {
    Exact(BigRational),
    /// The unique zero in `(lo, hi]`.
    Isolated(IsolatingInterval),
}

impl ZeroPoint {
    fn lo(&self) -> &BigRational {
        match self {
            ZeroPoint::Exact(x) => x,
            ZeroPoint::Isolated(iv) => &iv.lo,
        }
    }

    fn hi(&self) -> &BigRational {
        match self {
            ZeroPoint::Exact(x) => x,
            ZeroPoint::Isolated(iv) => &iv.hi,
        }
    }

    /// Midpoint estimate, for display.
    pub fn approx(&self) -> f64 {
        match self {
            ZeroPoint::Exact(x) => crate::poly::rational_to_f64(x),
            ZeroPoint::Isolated(iv) => iv.mid_f64(),
        }
    }
}

/// Sorted, distinct real zeros. Interval points remember the polynomial they
/// isolate so they can be narrowed on demand.
#[derive(Clone, Debug)]
pub struct ZeroList {
    points: Vec<ZeroPoint>,
    source: Option<CertifiedPoly>,
}

impl ZeroList {
    /// List of exact points; fails unless strictly increasing.
    pub fn exact(points: Vec<BigRational>) -> Result<Self> {
        if points.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::HypothesisViolated("zero list must be strictly increasing".into()));
        }
        Ok(ZeroList { points: points.into_iter().map(ZeroPoint::Exact).collect(), source: None })
    }

    pub fn from_ints(points: &[i64]) -> Result<Self> {
        Self::exact(points.iter().map(|&k| BigRational::from_integer(k.into())).collect())
    }

    pub fn empty() -> Self {
        ZeroList { points: Vec::new(), source: None }
    }

    fn with_zero(cp: &CertifiedPoly, mut rest: Vec<IsolatingInterval>, include_zero: bool) -> Result<Self> {
        let mut points = Vec::with_capacity(rest.len() + 1);
        let k = cp.zero_root_multiplicity();
        if k > 1 {
            return Err(Error::DegenerateChain);
        }
        let negatives: Vec<_> = rest.iter().take_while(|iv| iv.hi <= BigRational::zero()).cloned().collect();
        rest.drain(..negatives.len());
        points.extend(negatives.into_iter().map(ZeroPoint::Isolated));
        if include_zero && k == 1 {
            points.push(ZeroPoint::Exact(BigRational::zero()));
        }
        points.extend(rest.into_iter().map(ZeroPoint::Isolated));
        Ok(ZeroList { points, source: Some(cp.clone()) })
    }

    /// All real zeros of `cp`.
    pub fn real_zeros(cp: &CertifiedPoly) -> Result<Self> {
        if cp.degree().unwrap_or(0) == 0 {
            return Ok(Self::empty());
        }
        let rest = if cp.without_zero_root().is_some_and(|c| c.len() > 1) { isolate_real_zeros(cp)? } else { Vec::new() };
        Self::with_zero(cp, rest, true)
    }

    /// Zeros in `[0, inf)`.
    pub fn nonnegative_zeros(cp: &CertifiedPoly) -> Result<Self> {
        if cp.degree().unwrap_or(0) == 0 {
            return Ok(Self::empty());
        }
        Self::with_zero(cp, isolate_positive_zeros(cp)?, true)
    }

    /// Zeros in `(0, inf)`.
    pub fn positive_zeros(cp: &CertifiedPoly) -> Result<Self> {
        if cp.degree().unwrap_or(0) == 0 {
            return Ok(Self::empty());
        }
        Self::with_zero(cp, isolate_positive_zeros(cp)?, false)
    }

    /// All real zeros of an exact polynomial.
    pub fn of_polynomial(p: &Polynomial) -> Result<Self> {
        Self::real_zeros(&CertifiedPoly::from_polynomial(p))
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[ZeroPoint] {
        &self.points
    }

    pub fn approx(&self) -> Vec<f64> {
        self.points.iter().map(ZeroPoint::approx).collect()
    }

    /// The points with every isolating interval narrowed to at most `width`.
    pub fn narrowed(&self, width: &BigRational) -> Result<Vec<ZeroPoint>> {
        self.points
            .iter()
            .map(|p| match (p, &self.source) {
                (ZeroPoint::Isolated(iv), Some(cp)) if &iv.width() > width => {
                    Ok(ZeroPoint::Isolated(refine_interval(cp, iv, width)?))
                }
                _ => Ok(p.clone()),
            })
            .collect()
    }

    /// Halves the width of interval point `i`.
    fn narrow(&mut self, i: usize) -> Result<()> {
        let ZeroPoint::Isolated(iv) = &self.points[i] else { return Err(Error::OverlappingEnclosures) };
        let cp = self.source.as_ref().ok_or(Error::OverlappingEnclosures)?;
        let half = iv.width() / BigRational::from_integer(2.into());
        let next = refine_interval(cp, iv, &half)?;
        self.points[i] = ZeroPoint::Isolated(next);
        Ok(())
    }

    /// Zero of the source polynomial at `x`, decided exactly when possible.
    fn vanishes_at(&self, x: &BigRational) -> Result<bool> {
        match &self.source {
            Some(cp) => Ok(cp.sign_at(x)? == 0),
            None => Ok(false),
        }
    }
}

/// Ordering of two points that may still overlap.
fn order(a: &ZeroPoint, b: &ZeroPoint) -> Option<Ordering> {
    if a.hi() <= b.lo() && !(matches!(b, ZeroPoint::Exact(_)) && a.hi() == b.lo()) {
        return Some(Ordering::Less);
    }
    if b.hi() <= a.lo() && !(matches!(a, ZeroPoint::Exact(_)) && b.hi() == a.lo()) {
        return Some(Ordering::Greater);
    }
    None
}

const MAX_ROUNDS: usize = 200;

/// Merged order of the two lists as a sequence of `false` (from `a`) and
/// `true` (from `b`) labels.
fn merged_labels(a: &ZeroList, b: &ZeroList) -> Result<Vec<bool>> {
    let (mut a, mut b) = (a.clone(), b.clone());
    for _ in 0..MAX_ROUNDS {
        let mut clean = true;
        for i in 0..a.len() {
            for j in 0..b.len() {
                if order(&a.points[i], &b.points[j]).is_some() {
                    continue;
                }
                clean = false;
                match (&a.points[i], &b.points[j]) {
                    (ZeroPoint::Exact(_), ZeroPoint::Exact(_)) => return Err(Error::OverlappingEnclosures),
                    (ZeroPoint::Exact(x), ZeroPoint::Isolated(_)) => {
                        if b.vanishes_at(x)? {
                            return Err(Error::OverlappingEnclosures);
                        }
                        b.narrow(j)?;
                    }
                    (ZeroPoint::Isolated(_), ZeroPoint::Exact(x)) => {
                        if a.vanishes_at(x)? {
                            return Err(Error::OverlappingEnclosures);
                        }
                        a.narrow(i)?;
                    }
                    _ => {
                        a.narrow(i)?;
                        b.narrow(j)?;
                    }
                }
            }
        }
        if clean {
            let mut all: Vec<(&ZeroPoint, bool)> =
                a.points.iter().map(|p| (p, false)).chain(b.points.iter().map(|p| (p, true))).collect();
            all.sort_by(|x, y| {
                if x.1 == y.1 {
                    x.0.lo().cmp(y.0.lo())
                } else {
                    order(x.0, y.0).expect("separated")
                }
            });
            return Ok(all.into_iter().map(|(_, l)| l).collect());
        }
    }
    Err(Error::OverlappingEnclosures)
}

fn longest_run(labels: &[bool]) -> usize {
    let mut best = 0;
    let mut run = 0;
    for (i, l) in labels.iter().enumerate() {
        run = if i > 0 && labels[i - 1] == *l { run + 1 } else { 1 };
        best = best.max(run);
    }
    best
}

/// Strict alternation of the two zero lists. Lists whose sizes differ by more
/// than one never interlace.
pub fn interlaces(a: &ZeroList, b: &ZeroList) -> Result<bool> {
    if a.len().abs_diff(b.len()) > 1 {
        return Ok(false);
    }
    Ok(longest_run(&merged_labels(a, b)?) <= 1)
}

/// Weak interlacing: no three consecutive zeros of either list bound two
/// adjacent gaps that are both free of zeros of the other list.
pub fn weakly_interlaces(a: &ZeroList, b: &ZeroList) -> Result<bool> {
    Ok(longest_run(&merged_labels(a, b)?) <= 2)
}

/// Strictly positive rational weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombineParams {
    a: BigRational,
    b: BigRational,
    c: BigRational,
    d: BigRational,
}

impl CombineParams {
    pub fn new(a: BigRational, b: BigRational, c: BigRational, d: BigRational) -> Result<Self> {
        if [&a, &b, &c, &d].iter().any(|v| !v.is_positive()) {
            return Err(Error::OutOfRange("combination weights must be positive".into()));
        }
        Ok(CombineParams { a, b, c, d })
    }

    pub fn ones() -> Self {
        let one = BigRational::from_integer(1.into());
        CombineParams { a: one.clone(), b: one.clone(), c: one.clone(), d: one }
    }

    pub fn weights(&self) -> [&BigRational; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }
}

/// `(a u + b v, c u - d v)`. Fails only if one of the combinations vanishes
/// identically.
pub fn combine(u: &Polynomial, v: &Polynomial, params: &CombineParams) -> Result<(Polynomial, Polynomial)> {
    let big_u = u.linear_combination(&params.a, v, &params.b).ok_or(Error::ZeroPolynomial)?;
    let big_v = u.linear_combination(&params.c, v, &-&params.d).ok_or(Error::ZeroPolynomial)?;
    Ok((big_u, big_v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{certified_from_ints, rat, ray_components, Angle};

    fn list(v: &[i64]) -> ZeroList {
        ZeroList::from_ints(v).unwrap()
    }

    #[test]
    fn strict_interlacing_examples() {
        assert!(interlaces(&list(&[1, 3]), &list(&[2])).unwrap());
        assert!(!interlaces(&list(&[1, 2]), &list(&[3, 4])).unwrap());
        assert!(!interlaces(&list(&[1, 4]), &list(&[2, 3])).unwrap());
        assert!(interlaces(&ZeroList::empty(), &ZeroList::empty()).unwrap());
        assert!(!interlaces(&list(&[1, 2, 3]), &list(&[4])).unwrap());
    }

    #[test]
    fn weak_interlacing_examples() {
        let a = ZeroList::exact(vec![rat(1, 1), rat(2, 1), rat(3, 1)]).unwrap();
        assert!(weakly_interlaces(&a, &ZeroList::exact(vec![rat(5, 2)]).unwrap()).unwrap());
        assert!(!weakly_interlaces(&a, &list(&[10])).unwrap());
        assert!(weakly_interlaces(&list(&[1, 3]), &list(&[2])).unwrap());
    }

    #[test]
    fn pairwise_interlacing_does_not_force_weak_interlacing() {
        let (q1, q2) = (list(&[0, 10, 20, 30]), list(&[5, 15, 25]));
        let (g1, g2) = (list(&[9, 11, 21]), list(&[6, 24]));
        assert!(interlaces(&q1, &q2).unwrap());
        assert!(interlaces(&q1, &g1).unwrap());
        assert!(interlaces(&q2, &g2).unwrap());
        // 9, 11, 21 with no zero of g2 between them
        assert!(!weakly_interlaces(&g1, &g2).unwrap());
    }

    #[test]
    fn weak_inputs_can_give_non_weak_combinations() {
        // zeros 0, 1, 4 against 2, 3
        let u = Polynomial::from_ints(&[0, 4, -5, 1]).unwrap();
        let v = Polynomial::from_ints(&[6, -5, 1]).unwrap();
        let (zu, zv) = (ZeroList::of_polynomial(&u).unwrap(), ZeroList::of_polynomial(&v).unwrap());
        assert!(weakly_interlaces(&zu, &zv).unwrap());
        let (big_u, big_v) = combine(&u, &v, &CombineParams::ones()).unwrap();
        let (zu, zv) = (ZeroList::of_polynomial(&big_u).unwrap(), ZeroList::of_polynomial(&big_v).unwrap());
        assert_eq!((zu.len(), zv.len()), (3, 1));
        assert!(!weakly_interlaces(&zu, &zv).unwrap());
    }

    #[test]
    fn common_zero_is_an_error() {
        assert_eq!(interlaces(&list(&[1, 2]), &list(&[2])), Err(Error::OverlappingEnclosures));
        let a = ZeroList::of_polynomial(&Polynomial::from_ints(&[2, -3, 1]).unwrap()).unwrap();
        assert_eq!(interlaces(&a, &list(&[2])), Err(Error::OverlappingEnclosures));
        assert!(ZeroList::exact(vec![rat(2, 1), rat(1, 1)]).is_err());
    }

    #[test]
    fn combine_quadratic_and_linear() {
        let u = Polynomial::from_ints(&[3, -4, 1]).unwrap();
        let v = Polynomial::from_ints(&[-2, 1]).unwrap();
        let (big_u, big_v) = combine(&u, &v, &CombineParams::ones()).unwrap();
        assert_eq!(big_u, Polynomial::from_ints(&[1, -3, 1]).unwrap());
        assert_eq!(big_v, Polynomial::from_ints(&[5, -5, 1]).unwrap());
        let (zu, zv) = (ZeroList::of_polynomial(&big_u).unwrap(), ZeroList::of_polynomial(&big_v).unwrap());
        assert!(interlaces(&zu, &zv).unwrap());
        let s5 = 5f64.sqrt();
        let want = [(3.0 - s5) / 2.0, (3.0 + s5) / 2.0];
        for (z, w) in zu.approx().iter().zip(want) {
            assert!((z - w).abs() < 1.0);
        }

        let p = CombineParams::new(rat(1, 1), rat(1, 1000), rat(1, 1), rat(1, 1)).unwrap();
        let (big_u, _) = combine(&u, &v, &p).unwrap();
        let cp = CertifiedPoly::from_polynomial(&big_u);
        let iv = crate::count::isolate_real_zeros(&cp).unwrap();
        let z: Vec<f64> = iv.iter().map(|i| refine_interval(&cp, i, &rat(1, 1 << 20)).unwrap().mid_f64()).collect();
        assert!((z[0] - 1.0).abs() < 1e-3 && (z[1] - 3.0).abs() < 1e-3);

        let (big_u, big_v) =
            combine(&Polynomial::from_ints(&[-1, 1]).unwrap(), &Polynomial::from_ints(&[1]).unwrap(), &CombineParams::ones())
                .unwrap();
        assert_eq!(big_u, Polynomial::from_ints(&[0, 1]).unwrap());
        assert_eq!(big_v, Polynomial::from_ints(&[-2, 1]).unwrap());
        assert!(interlaces(&ZeroList::of_polynomial(&big_u).unwrap(), &ZeroList::of_polynomial(&big_v).unwrap()).unwrap());
        assert!(CombineParams::new(rat(0, 1), rat(1, 1), rat(1, 1), rat(1, 1)).is_err());
    }

    #[test]
    fn ray_components_interlace() {
        let p = Polynomial::from_ints(&[1, 4, 6, 4, 1]).unwrap();
        let (g1, g2) = ray_components(&p, Angle::new(3, 5).unwrap());
        let a = ZeroList::nonnegative_zeros(&g1).unwrap();
        let b = ZeroList::nonnegative_zeros(&g2).unwrap();
        assert_eq!((a.len(), b.len()), (3, 2));
        assert!(interlaces(&a, &b).unwrap());
        let d = ZeroList::nonnegative_zeros(&g1.derivative()).unwrap();
        assert!(interlaces(&a, &d).unwrap());
    }

    #[test]
    fn interval_against_interval() {
        let a = ZeroList::real_zeros(&certified_from_ints(&[-2, 0, 1])).unwrap();
        let b = ZeroList::real_zeros(&certified_from_ints(&[-3, 0, 1])).unwrap();
        assert!(!interlaces(&a, &b).unwrap());
        assert!(weakly_interlaces(&a, &b).unwrap());
        let c = ZeroList::real_zeros(&certified_from_ints(&[0, -2, 0, 1])).unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(c.points()[1], ZeroPoint::Exact(rat(0, 1)));
    }
}
