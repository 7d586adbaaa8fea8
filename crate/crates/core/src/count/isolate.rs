use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::sturm::{Build, SturmChain};
use crate::arith::{BigFloat, Round};
use crate::error::{Error, Result};
use crate::poly::CertifiedPoly;
use crate::precision;

/// Half-open interval `(lo, hi]` holding exactly one real zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IsolatingInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl IsolatingInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo < hi, "empty isolating interval");
        IsolatingInterval { lo, hi }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    /// Membership in `(lo, hi]`.
    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo < x && x <= &self.hi
    }

    pub fn mid_f64(&self) -> f64 {
        crate::poly::rational_to_f64(&self.mid())
    }
}

impl fmt::Debug for IsolatingInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}]", self.lo, self.hi)
    }
}

/// A power of two strictly above the modulus of every root (Cauchy bound
/// `1 + max |a_k| / |a_n|`, rounded up). `cp` must have a nonzero leading
/// coefficient.
pub fn root_bound(cp: &CertifiedPoly) -> Result<BigRational> {
    let cp = cp.with_resolved_signs()?;
    let c = cp.coeffs();
    let lead = c.last().expect("nonempty").enclosure.mig();
    let top = c[..c.len() - 1].iter().map(|v| v.enclosure.mag()).max().unwrap_or_else(BigFloat::zero);
    let ratio = top.div(&lead, 64, Round::Up);
    let bound = ratio.add(&BigFloat::one(), 64, Round::Up);
    Ok(pow2(bound.top()))
}

fn pow2(e: i64) -> BigRational {
    if e >= 0 {
        BigRational::from_integer(BigInt::one() << e as u64)
    } else {
        BigRational::new(BigInt::one(), BigInt::one() << (-e) as u64)
    }
}

fn core(cp: &CertifiedPoly) -> Result<CertifiedPoly> {
    cp.without_zero_root().ok_or(Error::DegenerateChain)
}

/// Runs `step` against chains of increasing precision until it produces a
/// value. `step` may keep partial progress between calls.
fn with_chain<T>(cp: &CertifiedPoly, mut step: impl FnMut(&SturmChain) -> Option<T>) -> Result<T> {
    let mut prec = cp.precision();
    loop {
        if let Build::Done(chain) = SturmChain::build(cp, prec)? {
            if let Some(v) = step(&chain) {
                return Ok(v);
            }
        }
        if prec >= precision::ceiling() {
            return Err(Error::SignIndeterminate { bits: prec });
        }
        prec = (prec * 2).min(precision::ceiling());
    }
}

const SPLITS: [(i64, i64); 7] = [(1, 2), (3, 8), (5, 8), (7, 16), (9, 16), (5, 16), (11, 16)];

/// A point strictly inside `(a, b)` at which the chain's variations are
/// determined, preferring points where the polynomial itself is nonzero.
fn split_point(chain: &SturmChain, a: &BigRational, b: &BigRational) -> Option<(BigRational, usize)> {
    let w = b - a;
    let mut fallback = None;
    for (n, d) in SPLITS {
        let m = a + &w * BigRational::new(n.into(), d.into());
        let signs = chain.signs_at(&m);
        if let Some(v) = super::sturm::count_variations(&signs) {
            if signs[0] != Some(0) {
                return Some((m, v));
            }
            fallback.get_or_insert((m, v));
        }
    }
    fallback
}

fn too_narrow(chain: &SturmChain, w: &BigRational) -> bool {
    match chain.precision() {
        None => false,
        Some(p) => w * pow2(p as i64) < BigRational::one(),
    }
}

/// Isolating intervals for the zeros in `(a, b]`, sorted.
fn isolate_between(chain: &SturmChain, a: &BigRational, b: &BigRational) -> Option<Vec<IsolatingInterval>> {
    let va = chain.variations_at(a)?;
    let vb = chain.variations_at(b)?;
    let mut out = Vec::new();
    let mut stack = vec![(a.clone(), va, b.clone(), vb)];
    while let Some((lo, vlo, hi, vhi)) = stack.pop() {
        match vlo - vhi {
            0 => {}
            1 => out.push(IsolatingInterval::new(lo, hi)),
            _ => {
                if too_narrow(chain, &(&hi - &lo)) {
                    return None;
                }
                let (m, vm) = split_point(chain, &lo, &hi)?;
                stack.push((m.clone(), vm, hi, vhi));
                stack.push((lo, vlo, m, vm));
            }
        }
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    Some(out)
}

/// Number of distinct zeros in `(0, inf)`.
pub fn sturm_count_positive(cp: &CertifiedPoly) -> Result<usize> {
    let core = core(cp)?;
    with_chain(&core, |chain| Some(chain.variations_at(&BigRational::zero())? - chain.variations_at_pos_infinity()))
}

/// Number of distinct real zeros, counting `t = 0` once when present.
pub fn sturm_count_real(cp: &CertifiedPoly) -> Result<usize> {
    let core = core(cp)?;
    let nonzero = with_chain(&core, |chain| Some(chain.variations_at_neg_infinity() - chain.variations_at_pos_infinity()))?;
    Ok(nonzero + usize::from(cp.zero_root_multiplicity() > 0))
}

/// Sorted, disjoint isolating intervals for the zeros in `(0, inf)`.
pub fn isolate_positive_zeros(cp: &CertifiedPoly) -> Result<Vec<IsolatingInterval>> {
    let core = core(cp)?;
    if core.len() == 1 {
        return Ok(Vec::new());
    }
    let b = root_bound(&core)?;
    with_chain(&core, |chain| isolate_between(chain, &BigRational::zero(), &b))
}

/// Sorted, disjoint isolating intervals for the nonzero real zeros. A zero at
/// `t = 0` is not included; see [`CertifiedPoly::zero_root_multiplicity`].
pub fn isolate_real_zeros(cp: &CertifiedPoly) -> Result<Vec<IsolatingInterval>> {
    let core = core(cp)?;
    if core.len() == 1 {
        return Ok(Vec::new());
    }
    let b = root_bound(&core)?;
    let zero = BigRational::zero();
    with_chain(&core, |chain| {
        let mut neg = isolate_between(chain, &-b.clone(), &zero)?;
        neg.extend(isolate_between(chain, &zero, &b)?);
        Some(neg)
    })
}

/// Shrinks `iv` to width at most `width` by bisection, keeping exactly one
/// zero inside.
pub fn refine_interval(cp: &CertifiedPoly, iv: &IsolatingInterval, width: &BigRational) -> Result<IsolatingInterval> {
    let core = core(cp)?;
    let mut cur = iv.clone();
    with_chain(&core, |chain| {
        while &cur.width() > width {
            if too_narrow(chain, &cur.width()) {
                return None;
            }
            let vlo = chain.variations_at(&cur.lo)?;
            let (m, vm) = split_point(chain, &cur.lo, &cur.hi)?;
            cur = if vlo - vm == 1 {
                IsolatingInterval::new(cur.lo.clone(), m)
            } else {
                IsolatingInterval::new(m, cur.hi.clone())
            };
        }
        Some(cur.clone())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::count::descartes_bound;
    use crate::poly::{certified_from_ints, ray_components, Angle, Polynomial};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn counts_positive_zeros() {
        assert_eq!(sturm_count_positive(&certified_from_ints(&[2, -3, 1])).unwrap(), 2);
        assert_eq!(sturm_count_positive(&certified_from_ints(&[1, 0, 1])).unwrap(), 0);
        assert_eq!(sturm_count_positive(&certified_from_ints(&[0, 4, 0, -4])).unwrap(), 1);
        assert_eq!(sturm_count_real(&certified_from_ints(&[0, 4, 0, -4])).unwrap(), 3);
    }

    #[test]
    fn isolates_positive_zeros() {
        let iv = isolate_positive_zeros(&certified_from_ints(&[2, -3, 1])).unwrap();
        assert_eq!(iv.len(), 2);
        assert!(iv[0].contains(&q(1, 1)) && iv[1].contains(&q(2, 1)));
        assert!(iv[0].hi <= iv[1].lo);

        let iv = isolate_positive_zeros(&certified_from_ints(&[0, 4, 0, -4])).unwrap();
        assert_eq!(iv.len(), 1);
        assert!(iv[0].contains(&q(1, 1)));

        assert!(isolate_positive_zeros(&certified_from_ints(&[1, 0, 1])).unwrap().is_empty());
    }

    #[test]
    fn isolates_all_real_zeros() {
        let cp = CertifiedPoly::from_polynomial(&Polynomial::from_roots(&[q(-3, 1), q(-1, 2), q(1, 3), q(5, 1)]));
        let iv = isolate_real_zeros(&cp).unwrap();
        let roots = [q(-3, 1), q(-1, 2), q(1, 3), q(5, 1)];
        assert_eq!(iv.len(), 4);
        for (i, r) in iv.iter().zip(&roots) {
            assert!(i.contains(r));
        }
    }

    #[test]
    fn refines_to_width() {
        let cp = certified_from_ints(&[2, -3, 1]);
        let r = refine_interval(&cp, &IsolatingInterval::new(q(1, 2), q(3, 2)), &q(1, 100)).unwrap();
        assert!(r.width() <= q(1, 100) && r.contains(&q(1, 1)));

        let cp = certified_from_ints(&[0, 4, 0, -4]);
        let r = refine_interval(&cp, &IsolatingInterval::new(q(1, 2), q(2, 1)), &q(1, 1000)).unwrap();
        assert!(r.width() <= q(1, 1000) && r.contains(&q(1, 1)));

        let cp = certified_from_ints(&[-2, 0, 1]);
        let w = q(1, 1_000_000);
        let r = refine_interval(&cp, &IsolatingInterval::new(q(1, 1), q(2, 1)), &w).unwrap();
        assert!(r.width() <= w);
        assert!((r.mid_f64() - 2f64.sqrt()).abs() < 1e-6);
        assert!((r.mid_f64() - 1.41421356).abs() < 1e-6);
    }

    #[test]
    fn irrational_ray_component() {
        let p = Polynomial::from_ints(&[1, 4, 6, 4, 1]).unwrap();
        let (g1, _) = ray_components(&p, Angle::new(3, 5).unwrap());
        assert_eq!(descartes_bound(&g1).unwrap(), 2);
        assert_eq!(sturm_count_positive(&g1).unwrap(), 2);
        let iv = isolate_positive_zeros(&g1).unwrap();
        assert_eq!(iv.len(), 2);
        let r = refine_interval(&g1, &iv[0], &q(1, 1 << 30)).unwrap();
        // g1/t = 4 s1 + 6 s2 t + 4 s3 t^2 + s4 t^3 with s_k = sin(3k pi/5)
        let s = |k: f64| (3.0 * k * std::f64::consts::PI / 5.0).sin();
        let t = r.mid_f64();
        let v = 4.0 * s(1.0) + 6.0 * s(2.0) * t + 4.0 * s(3.0) * t * t + s(4.0) * t * t * t;
        assert!(v.abs() < 1e-6);
    }

    #[test]
    fn identically_zero_is_degenerate() {
        let p = Polynomial::from_ints(&[1, 1]).unwrap();
        let (g1, _) = ray_components(&p, Angle::pi());
        assert_eq!(sturm_count_positive(&g1), Err(Error::DegenerateChain));
    }
}
