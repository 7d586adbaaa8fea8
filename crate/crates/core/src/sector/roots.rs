//! Certified enclosures of the complex roots of a rational polynomial.

use std::cmp::Ordering;
use std::sync::Arc;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Signed;

use super::exact_arg;
use crate::arith::{trig, BigFloat, CFloat, CInterval, Interval, Round};
use crate::count::sturm_count_real;
use crate::error::{Error, Result};
use crate::poly::{square_free_decomposition, CertifiedPoly, Polynomial};
use crate::precision;

pub const DEFAULT_RADIUS_TARGET: f64 = 1e-12;

/// A closed disk holding exactly `multiplicity` roots (one distinct root).
#[derive(Clone, Debug)]
pub struct RootEnclosure {
    pub center: CFloat,
    /// Upper bound on the distance from `center` to the root.
    pub radius: BigFloat,
    pub multiplicity: usize,
    /// The root is certified real (disk centred on the real axis).
    pub is_real: bool,
    /// Working precision at which the radius was certified.
    pub precision: u32,
    factor: Arc<Polynomial>,
}

impl RootEnclosure {
    /// Square-free factor of the input that this root belongs to.
    pub fn factor(&self) -> &Polynomial {
        &self.factor
    }

    /// The root is exactly `z = 0`.
    pub fn is_origin(&self) -> bool {
        self.center.is_zero() && self.radius.is_zero()
    }

    pub fn center_f64(&self) -> (f64, f64) {
        self.center.to_f64()
    }

    pub fn radius_f64(&self) -> f64 {
        self.radius.to_f64_round(Round::Up)
    }

    /// Disk lies strictly in the open upper half-plane.
    pub fn in_upper_half(&self) -> bool {
        !self.is_real && self.center.im > self.radius
    }

    /// Disk lies strictly in the open lower half-plane.
    pub fn in_lower_half(&self) -> bool {
        !self.is_real && self.center.im.neg() > self.radius
    }

    /// Enclosure of the modulus of the root.
    pub fn modulus(&self, prec: u32) -> Interval {
        let m = CInterval::point(&self.center).abs(prec);
        Interval::new(
            m.lo().sub(&self.radius, prec, Round::Down).max(BigFloat::zero()),
            m.hi().add(&self.radius, prec, Round::Up),
        )
    }

    /// Enclosure of `|arg z|` in `[0, pi]` for the root, or `None` when the
    /// disk touches the origin. Real roots get the exact value 0 or pi.
    pub fn abs_arg(&self, prec: u32) -> Option<Interval> {
        if self.is_origin() {
            return None;
        }
        if self.is_real {
            if self.radius >= self.center.re.abs() {
                return None;
            }
            return Some(if self.center.re.is_negative() { trig::pi(prec) } else { Interval::zero() });
        }
        let wp = prec + 8;
        let alpha = trig::abs_arg(&self.center.re, &self.center.im, wp);
        let m = CInterval::point(&self.center).abs(wp);
        if m.lo() <= &self.radius {
            return None;
        }
        // half-width of the disk as seen from the origin: asin(x) <= x / sqrt(1 - x^2)
        let x = Interval::point(self.radius.clone()).div(&Interval::point(m.lo().clone()), wp)?;
        let one_minus = Interval::one().sub(&x.square(wp), wp);
        if one_minus.lo() <= &BigFloat::zero() {
            return None;
        }
        let w = x.div(&one_minus.sqrt(wp)?, wp)?.hi().clone();
        let pi = trig::pi(wp);
        let lo = alpha.lo().sub(&w, prec, Round::Down).max(BigFloat::zero());
        let hi = alpha.hi().add(&w, prec, Round::Up).min(pi.hi().clone());
        Some(Interval::new(lo, hi))
    }

    /// `|arg z| / pi` exactly, when it can be proven rational: real roots,
    /// and roots of the form `r e^{i pi a/b}` with `r` or `r^2` rational and
    /// small `b`.
    pub fn exact_abs_arg(&self) -> Option<BigRational> {
        if self.is_origin() {
            return None;
        }
        if self.is_real {
            if self.radius >= self.center.re.abs() {
                return None;
            }
            return Some(BigRational::from_integer(i64::from(self.center.re.is_negative()).into()));
        }
        exact_arg::recognize(&self.factor, &self.center, &self.radius)
    }
}

/// Certified enclosures of all roots of `p`, one per distinct root, each with
/// radius at most `radius_target` and pairwise disjoint.
pub fn find_root_enclosures(p: &Polynomial, radius_target: f64) -> Result<Vec<RootEnclosure>> {
    if p.is_constant() {
        return Err(Error::DegreeZero);
    }
    if !(radius_target > 0.0 && radius_target.is_finite()) {
        return Err(Error::CertificationFailed(format!("radius target {radius_target} must be positive")));
    }
    let mut target = BigFloat::from_f64(radius_target);
    let q = p.strip_zero_root();
    let factors = square_free_decomposition(&q);
    for _ in 0..4 {
        let mut out = Vec::new();
        let k = p.zero_root_multiplicity();
        if k > 0 {
            out.push(RootEnclosure {
                center: CFloat::zero(),
                radius: BigFloat::zero(),
                multiplicity: k,
                is_real: true,
                precision: 0,
                factor: Arc::new(Polynomial::z()),
            });
        }
        for (f, mult) in &factors {
            let f = Arc::new(f.clone());
            let (prec, roots) = certify_factor(&f, &target)?;
            for (center, radius, is_real) in roots {
                let factor = f.clone();
                out.push(RootEnclosure { center, radius, multiplicity: *mult, is_real, precision: prec, factor });
            }
        }
        if pairwise_disjoint(&out) {
            out.sort_by(|a, b| {
                let (ar, ai) = a.center_f64();
                let (br, bi) = b.center_f64();
                ar.partial_cmp(&br).unwrap_or(Ordering::Equal).then(ai.partial_cmp(&bi).unwrap_or(Ordering::Equal))
            });
            return Ok(out);
        }
        target = target.mul_pow2(-40);
    }
    Err(Error::CertificationFailed("enclosures of distinct factors overlap".into()))
}

fn pairwise_disjoint(roots: &[RootEnclosure]) -> bool {
    let prec = 128;
    for (i, a) in roots.iter().enumerate() {
        for b in &roots[i + 1..] {
            let d2 = CInterval::point(&a.center).sub(&CInterval::point(&b.center), prec).norm_sqr(prec);
            let r = a.radius.add(&b.radius, prec, Round::Up);
            if d2.lo() <= &r.mul(&r, prec, Round::Up) {
                return false;
            }
        }
    }
    true
}

/// Roots of a square-free factor with certified radii.
fn certify_factor(f: &Polynomial, target: &BigFloat) -> Result<(u32, Vec<(CFloat, BigFloat, bool)>)> {
    let n = f.degree();
    if n == 1 {
        let root = -&f.coeffs()[0] / &f.coeffs()[1];
        let mut prec = 128;
        loop {
            let c = BigFloat::from_rational(&root, prec, Round::Down);
            let err = BigFloat::from_rational(&(&root - c.to_rational()).abs(), 64, Round::Up);
            if &err <= target {
                return Ok((prec, vec![(CFloat::new(c, BigFloat::zero()), err, true)]));
            }
            prec *= 2;
        }
    }
    // Disjoint disks around conjugation-symmetric centers certify the layout:
    // a disk centred on the axis holds a real root, a disk disjoint from its
    // mirror image a non-real one. The real count is therefore only guessed
    // here, and taken from a Sturm sequence if certification stalls.
    let approx = aberth_f64(&f.to_f64());
    let guess = approx.iter().filter(|z| z.im.abs() <= 1e-9 * z.norm().max(1e-300)).count();
    let guess = if (n - guess) % 2 == 0 { guess } else { sturm_count_real(&CertifiedPoly::from_polynomial(f))? };
    let mut layout = Layout::new(&approx, guess);
    let mut centers = layout.centers(&approx);
    let mut prec = 128u32;
    let mut polished = false;
    let mut counted = false;
    let mut free_run = false;
    loop {
        if let Some(radii) = smith_radii(f, &centers, prec, target) {
            let roots = centers.into_iter().zip(radii).enumerate().map(|(i, (c, r))| (c, r, i < layout.reals)).collect();
            return Ok((prec, roots));
        }
        if !polished {
            // the double-precision start is often just short of the target
            polished = true;
            centers = newton(f, &centers, prec, &layout);
            continue;
        }
        if !counted {
            counted = true;
            let real_count = sturm_count_real(&CertifiedPoly::from_polynomial(f))?;
            if real_count != layout.reals {
                layout = Layout::new(&approx, real_count);
                centers = polish(f, &layout.centers(&approx), prec, &layout);
                continue;
            }
        }
        let top = precision::ceiling().max(128);
        if prec >= top {
            return Err(Error::CertificationFailed(format!(
                "residual bound above target at {prec} bits for a degree-{n} factor"
            )));
        }
        if !free_run {
            // the double-precision start itself is poor (ill-conditioned
            // factor): iterate without the symmetry constraint, then re-pair
            free_run = true;
            let start: Vec<CFloat> = approx.iter().map(|z| CFloat::from_f64(z.re, z.im)).collect();
            let z = aberth(f, &start, prec, None, FREE_ITERATIONS);
            let real_count = sturm_count_real(&CertifiedPoly::from_polynomial(f))?;
            let rough: Vec<Complex64> = z.iter().map(|c| { let (re, im) = c.to_f64(); Complex64::new(re, im) }).collect();
            layout = Layout::new(&rough, real_count);
            centers = layout.centers_from(&z);
            continue;
        }
        prec = (prec * 2).min(top);
        centers = polish(f, &centers, prec, &layout);
    }
}

/// Which approximations are treated as real, and how the rest pair up under
/// conjugation: `reals` real roots first, then `(upper, conj(upper))` pairs.
struct Layout {
    reals: usize,
    order: Vec<usize>,
}

impl Layout {
    fn new(z: &[Complex64], real_count: usize) -> Self {
        let mut idx: Vec<usize> = (0..z.len()).collect();
        let rel = |c: &Complex64| c.im.abs() / c.norm().max(f64::MIN_POSITIVE);
        idx.sort_by(|&a, &b| rel(&z[a]).partial_cmp(&rel(&z[b])).unwrap_or(Ordering::Equal));
        let (reals, rest) = idx.split_at(real_count);
        let mut reals = reals.to_vec();
        reals.sort_by(|&a, &b| z[a].re.partial_cmp(&z[b].re).unwrap_or(Ordering::Equal));
        let mut rest = rest.to_vec();
        rest.sort_by(|&a, &b| z[b].im.partial_cmp(&z[a].im).unwrap_or(Ordering::Equal));
        let uppers = &rest[..rest.len() / 2];
        let mut order = reals;
        order.extend_from_slice(uppers);
        Layout { reals: real_count, order }
    }

    fn centers(&self, z: &[Complex64]) -> Vec<CFloat> {
        let mut out = Vec::with_capacity(z.len());
        for (k, &i) in self.order.iter().enumerate() {
            if k < self.reals {
                out.push(CFloat::from_f64(z[i].re, 0.0));
            } else {
                // a pair that looks real in double precision starts off the axis
                let im = z[i].im.abs().max(1e-8 * z[i].norm().max(1e-300));
                out.push(CFloat::from_f64(z[i].re, im));
                out.push(CFloat::from_f64(z[i].re, -im));
            }
        }
        out
    }

    /// As [`Layout::centers`] from multiprecision approximations.
    fn centers_from(&self, z: &[CFloat]) -> Vec<CFloat> {
        let mut out = Vec::with_capacity(z.len());
        for (k, &i) in self.order.iter().enumerate() {
            if k < self.reals {
                out.push(CFloat::new(z[i].re.clone(), BigFloat::zero()));
            } else {
                let up = CFloat::new(z[i].re.clone(), z[i].im.abs());
                out.push(up.conj());
                out.push(up);
            }
        }
        self.symmetrize(&mut out);
        out
    }

    /// Indices of the real roots and the upper member of each pair.
    fn independent(&self, n: usize) -> impl Iterator<Item = usize> {
        (0..self.reals).chain((self.reals..n).step_by(2))
    }

    /// Restores exact conjugate symmetry after an iteration step.
    fn symmetrize(&self, c: &mut [CFloat]) {
        for v in c[..self.reals].iter_mut() {
            v.im = BigFloat::zero();
        }
        let mut k = self.reals;
        while k + 1 < c.len() {
            let up = CFloat::new(c[k].re.clone(), c[k].im.abs());
            c[k + 1] = up.conj();
            c[k] = up;
            k += 2;
        }
    }
}

/// Simultaneous Aberth-Ehrlich iteration in double precision.
fn aberth_f64(c: &[f64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    let lc = c[n];
    let a: Vec<f64> = c.iter().map(|v| v / lc).collect();
    let mut r = 0f64;
    for (k, ak) in a[..n].iter().enumerate() {
        r = r.max(ak.abs().powf(1.0 / (n - k) as f64));
    }
    let r = if r > 0.0 { 2.0 * r } else { 1.0 };
    let center = -a[n - 1] / n as f64;
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            Complex64::new(center, 0.0) + Complex64::from_polar(r, t)
        })
        .collect();
    let mut settled = 0;
    let (mut best, mut stalled) = (f64::INFINITY, 0);
    for _ in 0..2000 {
        let mut worst = 0f64;
        for i in 0..n {
            let (mut p, mut dp) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
            for ak in a.iter().rev() {
                dp = dp * z[i] + p;
                p = p * z[i] + ak;
            }
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                worst = worst.max(w.norm() / z[i].norm().max(f64::MIN_POSITIVE));
            }
        }
        if worst < 1e-15 {
            settled += 1;
            if settled >= 2 {
                break;
            }
        }
        // rounding noise: corrections stop shrinking
        if worst < 1e-10 {
            if worst < best / 2.0 {
                best = worst;
                stalled = 0;
            } else {
                stalled += 1;
                if stalled >= 5 {
                    break;
                }
            }
        }
    }
    z
}

fn horner(coeffs: &[CInterval], z: &CInterval, prec: u32) -> CInterval {
    let mut acc = CInterval::zero();
    for c in coeffs.iter().rev() {
        acc = acc.mul(z, prec).add(c, prec);
    }
    acc
}

/// Radii from the Weierstrass corrections: every root lies in the union of
/// the disks `|z - z_i| <= n |f(z_i)| / |lc prod_{j != i} (z_i - z_j)|`, and
/// pairwise disjoint disks hold one root each.
fn smith_radii(f: &Polynomial, centers: &[CFloat], prec: u32, target: &BigFloat) -> Option<Vec<BigFloat>> {
    let n = centers.len();
    if n != f.degree() {
        return None;
    }
    let coeffs: Vec<CInterval> =
        f.coeffs().iter().map(|c| CInterval::from_real(Interval::from_rational(c, prec))).collect();
    let lc2 = Interval::from_rational(f.leading(), prec).square(prec);
    let pts: Vec<CInterval> = centers.iter().map(CInterval::point).collect();
    // lower bounds on squared distances, row-major upper triangle
    let mut dist2 = vec![BigFloat::zero(); n * n];
    for i in 0..n {
        for j in i + 1..n {
            let d = pts[i].sub(&pts[j], prec).norm_sqr(prec).lo().clone();
            dist2[i * n + j] = d.clone();
            dist2[j * n + i] = d;
        }
    }
    let n2 = BigFloat::from_int((n * n) as i64);
    let target2 = target.mul(target, prec, Round::Down);
    let mut radii = Vec::with_capacity(n);
    for i in 0..n {
        let v2 = horner(&coeffs, &pts[i], prec).norm_sqr(prec);
        let mut den2 = lc2.lo().clone();
        for j in (0..n).filter(|&j| j != i) {
            den2 = den2.mul(&dist2[i * n + j], prec, Round::Down);
        }
        if !den2.is_positive() {
            return None;
        }
        let r2 = v2.hi().mul(&n2, prec, Round::Up).div(&den2, prec, Round::Up);
        if r2 > target2 {
            return None;
        }
        radii.push(r2.sqrt(prec, Round::Up));
    }
    for i in 0..n {
        for j in i + 1..n {
            let s = radii[i].add(&radii[j], prec, Round::Up);
            if dist2[i * n + j] <= s.mul(&s, prec, Round::Up) {
                return None;
            }
        }
    }
    Some(radii)
}

/// Two Newton steps on the independent centers; enough when the start is
/// already accurate to nearly double precision.
fn newton(f: &Polynomial, centers: &[CFloat], prec: u32, layout: &Layout) -> Vec<CFloat> {
    let a: Vec<CFloat> = f
        .coeffs()
        .iter()
        .map(|c| CFloat::new(BigFloat::from_rational(c, prec + 16, Round::Down), BigFloat::zero()))
        .collect();
    let mut z = centers.to_vec();
    for _ in 0..2 {
        for i in layout.independent(z.len()) {
            let (mut p, mut dp) = (CFloat::zero(), CFloat::zero());
            for ak in a.iter().rev() {
                dp = dp.mul(&z[i], prec).add(&p, prec);
                p = p.mul(&z[i], prec).add(ak, prec);
            }
            if let Some(w) = p.div(&dp, prec) {
                z[i] = z[i].sub(&w, prec);
            }
        }
        layout.symmetrize(&mut z);
    }
    z
}

const FREE_ITERATIONS: usize = 400;

/// A few Aberth steps at `prec` bits, keeping the layout's symmetry.
fn polish(f: &Polynomial, centers: &[CFloat], prec: u32, layout: &Layout) -> Vec<CFloat> {
    aberth(f, centers, prec, Some(layout), 8)
}

/// Aberth iteration at `prec` bits. With a layout only the independent
/// centers move and symmetry is restored after each sweep; without one every
/// center moves freely. Stops once every correction is below the working
/// precision.
fn aberth(f: &Polynomial, centers: &[CFloat], prec: u32, layout: Option<&Layout>, rounds: usize) -> Vec<CFloat> {
    let n = centers.len();
    let a: Vec<BigFloat> = f.coeffs().iter().map(|c| BigFloat::from_rational(c, prec + 16, Round::Down)).collect();
    let one = CFloat::new(BigFloat::one(), BigFloat::zero());
    let moving: Vec<usize> = match layout {
        Some(l) => l.independent(n).collect(),
        None => (0..n).collect(),
    };
    let mut z = centers.to_vec();
    for _ in 0..rounds {
        let mut next = z.clone();
        let mut small = true;
        for &i in &moving {
            let mut p = CFloat::zero();
            let mut dp = CFloat::zero();
            for ak in a.iter().rev() {
                dp = dp.mul(&z[i], prec).add(&p, prec);
                p = p.mul(&z[i], prec).add(&CFloat::new(ak.clone(), BigFloat::zero()), prec);
            }
            let Some(ratio) = p.div(&dp, prec) else { continue };
            let mut s = CFloat::zero();
            for j in 0..n {
                if j != i {
                    if let Some(inv) = one.div(&z[i].sub(&z[j], prec), prec) {
                        s = s.add(&inv, prec);
                    }
                }
            }
            let den = one.sub(&ratio.mul(&s, prec), prec);
            let Some(w) = ratio.div(&den, prec) else { continue };
            // |w| relative to |z| still above 2^-(prec - 16)?
            let wt = w.re.abs().max(w.im.abs()).top();
            let zt = z[i].re.abs().max(z[i].im.abs()).top();
            if !w.is_zero() && wt > zt.saturating_sub(prec as i64 - 16) {
                small = false;
            }
            next[i] = z[i].sub(&w, prec);
        }
        if let Some(l) = layout {
            l.symmetrize(&mut next);
        }
        z = next;
        if small {
            break;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c).unwrap()
    }

    fn close(r: &RootEnclosure, re: f64, im: f64) -> bool {
        let (a, b) = r.center_f64();
        (a - re).abs() < 1e-10 && (b - im).abs() < 1e-10
    }

    #[test]
    fn conjugate_pair_on_imaginary_axis() {
        let roots = find_root_enclosures(&p(&[1, 0, 1]), 1e-12).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(close(&roots[0], 0.0, -1.0) && close(&roots[1], 0.0, 1.0));
        assert!(roots.iter().all(|r| r.radius_f64() <= 1e-12 && r.multiplicity == 1 && !r.is_real));
    }

    #[test]
    fn repeated_factor_gets_multiplicity() {
        let roots = find_root_enclosures(&p(&[1, 2, 3, 2, 1]), 1e-12).unwrap();
        assert_eq!(roots.len(), 2);
        let h = 3f64.sqrt() / 2.0;
        assert!(close(&roots[0], -0.5, -h) && close(&roots[1], -0.5, h));
        assert!(roots.iter().all(|r| r.multiplicity == 2));
    }

    #[test]
    fn linear_and_origin_roots() {
        let roots = find_root_enclosures(&p(&[1, 1]), 1e-12).unwrap();
        assert_eq!(roots.len(), 1);
        assert!(roots[0].is_real && close(&roots[0], -1.0, 0.0) && roots[0].radius_f64() <= 1e-12);
        let roots = find_root_enclosures(&p(&[0, 0, 1, 1]), 1e-12).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots[1].is_origin() && roots[1].multiplicity == 2);
        assert_eq!(find_root_enclosures(&p(&[4]), 1e-12).unwrap_err(), Error::DegreeZero);
    }

    #[test]
    fn nearly_real_pair_is_not_real() {
        // 1 +- 1e-12 i looks real in double precision
        let eps = BigRational::new(1.into(), BigInt::from(10).pow(24));
        let q = Polynomial::new(vec![rat(1, 1) + eps, rat(-2, 1), rat(1, 1)]).unwrap();
        let roots = find_root_enclosures(&q, 1e-14).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots.iter().all(|r| !r.is_real));
        assert!(roots[0].in_lower_half() && roots[1].in_upper_half());
    }

    #[test]
    fn close_real_roots_are_separated() {
        let q = Polynomial::from_roots(&[rat(1, 1), rat(1_000_001, 1_000_000), rat(-3, 7)]);
        let roots = find_root_enclosures(&q, 1e-12).unwrap();
        assert_eq!(roots.len(), 3);
        assert!(roots.iter().all(|r| r.is_real));
    }

    #[test]
    fn wilkinson_like_degree_twenty() {
        let rs: Vec<_> = (1..=20).map(|k| rat(-k, 1)).collect();
        let q = Polynomial::from_roots(&rs);
        let roots = find_root_enclosures(&q, 1e-12).unwrap();
        assert_eq!(roots.len(), 20);
        for (k, r) in roots.iter().enumerate() {
            assert!(r.is_real && close(r, -20.0 + k as f64, 0.0));
        }
    }

    #[test]
    fn poor_double_precision_start() {
        // clustered near the negative axis; double-precision Aberth lands far off
        let phi = crate::poly::Angle::new(17, 20).unwrap();
        let q = crate::sector::generate_sector_poly(23, phi, 11497910127153196461, &Default::default()).unwrap();
        let roots = find_root_enclosures(&q, 1e-12).unwrap();
        assert_eq!(roots.len(), 23);
        let bound = crate::sector::min_argument(&q).unwrap();
        assert!(bound.lower() >= phi.radians(64).hi());
    }

    #[test]
    fn arguments_of_roots() {
        let roots = find_root_enclosures(&p(&[2, 2, 1]), 1e-12).unwrap();
        let a = roots[1].abs_arg(64).unwrap();
        let want = 3.0 * std::f64::consts::PI / 4.0;
        let (lo, hi) = a.to_f64_pair();
        assert!(lo <= want && want <= hi && hi - lo < 1e-10);
        assert!(roots[1].in_upper_half() && roots[0].in_lower_half());
        let roots = find_root_enclosures(&p(&[1, 3, 3, 1]), 1e-12).unwrap();
        assert_eq!(roots[0].exact_abs_arg(), Some(BigRational::from_integer(1.into())));
    }

    #[test]
    fn exact_arguments_are_recognized() {
        let roots = find_root_enclosures(&p(&[1, 1, 1]), 1e-12).unwrap();
        for r in &roots {
            assert_eq!(r.exact_abs_arg(), Some(rat(2, 3)));
        }
        // -1 +- i: modulus sqrt 2, argument 3pi/4
        let roots = find_root_enclosures(&p(&[2, 2, 1]), 1e-12).unwrap();
        assert_eq!(roots[1].exact_abs_arg(), Some(rat(3, 4)));
        // (z^2 - 3z + 3)(z^2 + z + 1): sqrt(3) e^{+-i pi/6} and e^{+-2 pi i/3}
        let roots = find_root_enclosures(&p(&[3, 0, 1, -2, 1]), 1e-12).unwrap();
        let args: Vec<_> = roots.iter().map(|r| r.exact_abs_arg()).collect();
        assert_eq!(args, vec![Some(rat(2, 3)), Some(rat(2, 3)), Some(rat(1, 6)), Some(rat(1, 6))]);
        // z^2 + z + 2 has argument acos(-1/(2 sqrt 2)), not a rational multiple of pi
        let roots = find_root_enclosures(&p(&[2, 1, 1]), 1e-12).unwrap();
        assert_eq!(roots[1].exact_abs_arg(), None);
    }
}
