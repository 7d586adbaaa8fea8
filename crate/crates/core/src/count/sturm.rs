use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::Interval;
use crate::error::{Error, Result};
use crate::poly::gcd::pseudo_rem;
use crate::poly::CertifiedPoly;
use crate::precision;

/// Signed remainder sequence `f, f', -rem(f, f'), ...`.
///
/// Exactly known inputs use an integer primitive remainder sequence; inputs
/// with irrational coefficients use interval long division, rebuilt from
/// scratch at doubled precision whenever a leading coefficient cannot be
/// sign-resolved.
#[derive(Clone, Debug)]
pub struct SturmChain {
    kind: Kind,
}

#[derive(Clone, Debug)]
enum Kind {
    Exact(Vec<Vec<BigInt>>),
    Approx { elems: Vec<Vec<Interval>>, prec: u32 },
}

pub(crate) enum Build {
    Done(SturmChain),
    /// Some leading coefficient straddles zero at this precision.
    Retry,
}

impl SturmChain {
    /// Chain for `cp`, whose leading coefficient must be known nonzero.
    pub fn new(cp: &CertifiedPoly) -> Result<Self> {
        let mut prec = cp.precision();
        loop {
            match Self::build(cp, prec)? {
                Build::Done(c) => return Ok(c),
                Build::Retry if prec >= precision::ceiling() => {
                    return Err(Error::SignIndeterminate { bits: prec })
                }
                Build::Retry => prec = (prec * 2).min(precision::ceiling()),
            }
        }
    }

    pub(crate) fn build(cp: &CertifiedPoly, prec: u32) -> Result<Build> {
        if let Some(q) = cp.exact_rationals() {
            return exact_chain(&q).map(|c| Build::Done(SturmChain { kind: Kind::Exact(c) }));
        }
        let cp = cp.at_precision(prec);
        approx_chain(&cp, prec)
    }

    pub fn len(&self) -> usize {
        match &self.kind {
            Kind::Exact(e) => e.len(),
            Kind::Approx { elems, .. } => elems.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Degrees of the chain elements, strictly decreasing.
    pub fn degrees(&self) -> Vec<usize> {
        match &self.kind {
            Kind::Exact(e) => e.iter().map(|v| v.len() - 1).collect(),
            Kind::Approx { elems, .. } => elems.iter().map(|v| v.len() - 1).collect(),
        }
    }

    /// Working precision of an interval chain; `None` for exact chains.
    pub fn precision(&self) -> Option<u32> {
        match &self.kind {
            Kind::Exact(_) => None,
            Kind::Approx { prec, .. } => Some(*prec),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.kind, Kind::Exact(_))
    }

    /// Certified sign of each element at `x`; `None` where undetermined.
    pub fn signs_at(&self, x: &BigRational) -> Vec<Option<i32>> {
        match &self.kind {
            Kind::Exact(e) => e.iter().map(|c| Some(exact_sign(c, x))).collect(),
            Kind::Approx { elems, prec } => {
                let xi = Interval::from_rational(x, *prec);
                elems
                    .iter()
                    .map(|c| {
                        let mut acc = Interval::zero();
                        for a in c.iter().rev() {
                            acc = acc.mul(&xi, *prec).add(a, *prec);
                        }
                        acc.sign()
                    })
                    .collect()
            }
        }
    }

    /// Sign variations at `x`, or `None` if the signs do not determine them.
    pub fn variations_at(&self, x: &BigRational) -> Option<usize> {
        count_variations(&self.signs_at(x))
    }

    fn leading_signs(&self) -> Vec<i32> {
        match &self.kind {
            Kind::Exact(e) => e.iter().map(|c| sign_int(c.last().expect("nonempty"))).collect(),
            Kind::Approx { elems, .. } => elems
                .iter()
                .map(|c| c.last().expect("nonempty").sign().expect("resolved leading coefficient"))
                .collect(),
        }
    }

    pub fn variations_at_pos_infinity(&self) -> usize {
        let s: Vec<_> = self.leading_signs().into_iter().map(Some).collect();
        count_variations(&s).expect("all signs known")
    }

    pub fn variations_at_neg_infinity(&self) -> usize {
        let s: Vec<_> = self
            .leading_signs()
            .into_iter()
            .zip(self.degrees())
            .map(|(s, d)| Some(if d % 2 == 0 { s } else { -s }))
            .collect();
        count_variations(&s).expect("all signs known")
    }
}

/// Variations ignoring exact zeros. An undetermined interior entry is
/// harmless when its neighbours have opposite certified signs, since the
/// triple contributes one variation whatever its middle sign is.
pub(crate) fn count_variations(signs: &[Option<i32>]) -> Option<usize> {
    signs.first()?.as_ref()?;
    let mut last = 0;
    let mut count = 0;
    for (i, s) in signs.iter().enumerate() {
        match s {
            Some(0) => {}
            Some(s) => {
                if last != 0 && *s != last {
                    count += 1;
                }
                last = *s;
            }
            None => {
                let prev = signs[i - 1]?;
                let next = (*signs.get(i + 1)?)?;
                if prev == 0 || prev != -next {
                    return None;
                }
            }
        }
    }
    Some(count)
}

fn sign_int(v: &BigInt) -> i32 {
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

/// Sign of `sum c_k x^k` for rational `x`, exactly.
fn exact_sign(c: &[BigInt], x: &BigRational) -> i32 {
    let (num, den) = (x.numer(), x.denom());
    let n = c.len() - 1;
    let mut acc = BigInt::zero();
    let mut den_pow = BigInt::one();
    // acc = sum c_k num^k den^(n-k), built from the top: acc = acc*num + c_k*den^(n-k)
    let mut pows = Vec::with_capacity(n + 1);
    for _ in 0..=n {
        pows.push(den_pow.clone());
        den_pow *= den;
    }
    for (k, ck) in c.iter().enumerate().rev() {
        acc = acc * num + ck * &pows[n - k];
    }
    sign_int(&acc)
}

/// Divides by the positive gcd of the coefficients, keeping the sign.
fn reduce_content(c: &mut [BigInt]) {
    let g = c.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for v in c.iter_mut() {
            *v = &*v / &g;
        }
    }
}

fn exact_chain(q: &[BigRational]) -> Result<Vec<Vec<BigInt>>> {
    let lcm = q.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut f: Vec<BigInt> = q.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    while f.last().is_some_and(|v| v.is_zero()) {
        f.pop();
    }
    if f.is_empty() {
        return Err(Error::DegenerateChain);
    }
    reduce_content(&mut f);
    if f.len() == 1 {
        return Ok(vec![f]);
    }
    let mut d: Vec<BigInt> = f.iter().enumerate().skip(1).map(|(k, c)| c * BigInt::from(k)).collect();
    reduce_content(&mut d);
    // Subresultant sequence: each remainder is divided exactly by g h^delta,
    // which keeps coefficient growth linear without any gcd. `sign` records
    // the factor that turns the subresultant into the Sturm element.
    let mut raw = vec![f, d];
    let mut sign = vec![1i32, 1];
    let (mut g, mut h) = (BigInt::one(), BigInt::one());
    loop {
        let k = raw.len() - 1;
        let (a, b) = (&raw[k - 1], &raw[k]);
        if b.len() == 1 {
            break;
        }
        let delta = (a.len() - b.len()) as u32;
        let mut r = pseudo_rem(a, b);
        if r.is_empty() {
            return Err(Error::DegenerateChain);
        }
        let divisor = &g * h.pow(delta);
        for v in r.iter_mut() {
            *v = &*v / &divisor;
        }
        let lb = b.last().expect("nonempty");
        let mut s = -sign[k - 1] * sign_int(&divisor);
        if lb.is_negative() && (delta + 1) % 2 == 1 {
            s = -s;
        }
        g = lb.clone();
        h = if delta == 1 { g.clone() } else { g.pow(delta) / h.pow(delta - 1) };
        raw.push(r);
        sign.push(s);
    }
    Ok(raw
        .into_iter()
        .zip(sign)
        .map(|(mut c, s)| {
            if s < 0 {
                for v in c.iter_mut() {
                    *v = -&*v;
                }
            }
            c
        })
        .collect())
}

fn approx_chain(cp: &CertifiedPoly, prec: u32) -> Result<Build> {
    let mut f: Vec<Interval> = cp.coeffs().iter().map(|c| c.enclosure.clone()).collect();
    while f.last().is_some_and(|v| v.is_exact_zero()) {
        f.pop();
    }
    if f.is_empty() {
        return Err(Error::DegenerateChain);
    }
    if f.last().expect("nonempty").sign().is_none() {
        return Ok(Build::Retry);
    }
    let mut chain = vec![f];
    if chain[0].len() > 1 {
        let d = chain[0].iter().enumerate().skip(1).map(|(k, c)| c.mul(&Interval::from_int(k as i64), prec)).collect();
        chain.push(d);
    }
    loop {
        let b = chain.last().expect("nonempty");
        if b.len() == 1 {
            return Ok(Build::Done(SturmChain { kind: Kind::Approx { elems: chain, prec } }));
        }
        let a = &chain[chain.len() - 2];
        let mut r = interval_rem(a, b, prec);
        while r.last().is_some_and(|v| v.is_exact_zero()) {
            r.pop();
        }
        if r.is_empty() {
            return Err(Error::DegenerateChain);
        }
        if r.last().expect("nonempty").sign().is_none() {
            if prec >= precision::ceiling() && r.iter().all(|v| v.contains_zero()) {
                return Err(Error::DegenerateChain);
            }
            return Ok(Build::Retry);
        }
        let r = r.iter().map(|v| v.neg()).collect();
        chain.push(r);
    }
}

/// Remainder of `a / b` where `b`'s leading coefficient excludes zero.
fn interval_rem(a: &[Interval], b: &[Interval], prec: u32) -> Vec<Interval> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    for k in (db..a.len()).rev() {
        let q = r[k].div(lb, prec).expect("leading coefficient excludes zero");
        if !q.is_exact_zero() {
            for j in 0..db {
                r[k - db + j] = r[k - db + j].sub(&q.mul(&b[j], prec), prec);
            }
        }
        r.pop();
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{certified_from_ints, ray_components, Angle, Polynomial};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn exact_chain_counts_roots() {
        let c = SturmChain::new(&certified_from_ints(&[2, -3, 1])).unwrap();
        assert!(c.is_exact());
        assert_eq!(c.degrees(), vec![2, 1, 0]);
        let v0 = c.variations_at(&q(0, 1)).unwrap();
        assert_eq!(v0 - c.variations_at_pos_infinity(), 2);
        assert_eq!(c.variations_at(&q(3, 2)).unwrap() - c.variations_at_pos_infinity(), 1);
    }

    #[test]
    fn non_square_free_input_degenerates() {
        let e = SturmChain::new(&certified_from_ints(&[1, 2, 1])).unwrap_err();
        assert_eq!(e, Error::DegenerateChain);
    }

    #[test]
    fn interval_chain_matches_exact_count() {
        let p = Polynomial::from_ints(&[1, 4, 6, 4, 1]).unwrap();
        let (g1, g2) = ray_components(&p, Angle::new(3, 5).unwrap());
        let g1 = g1.without_zero_root().unwrap();
        let c = SturmChain::new(&g1).unwrap();
        assert!(!c.is_exact());
        let pos = c.variations_at(&q(0, 1)).unwrap() - c.variations_at_pos_infinity();
        assert_eq!(pos, 2);
        let c2 = SturmChain::new(&g2).unwrap();
        let pos2 = c2.variations_at(&q(0, 1)).unwrap() - c2.variations_at_pos_infinity();
        // g2 has zeros near 0.384 and 1.423 on the positive axis
        assert_eq!(pos2, 2);
    }

    #[test]
    fn undetermined_middle_entry_is_tolerated() {
        assert_eq!(count_variations(&[Some(1), None, Some(-1), Some(-1)]), Some(1));
        assert_eq!(count_variations(&[Some(1), None, Some(1)]), None);
        assert_eq!(count_variations(&[None, Some(1)]), None);
        assert_eq!(count_variations(&[Some(0), Some(1), Some(-1)]), Some(1));
    }
}
