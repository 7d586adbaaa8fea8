//! Net argument change of `p` along the ray `t e^{i theta}`, `t >= 0`, and the
//! resulting count of zeros in the upper sector `0 < arg z < theta`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::count::{isolate_positive_zeros, refine_interval, IsolatingInterval};
use crate::error::{Error, Result};
use crate::poly::{ray_components, Angle, CertifiedPoly, Polynomial};
use crate::sector::{find_root_enclosures, RootEnclosure, DEFAULT_RADIUS_TARGET};

/// `Delta = n theta - 2 pi m`, with `m` zeros (with multiplicity) in the
/// open upper sector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ArgVariation {
    pub n: usize,
    pub m: usize,
    pub theta: Angle,
}

impl ArgVariation {
    /// `Delta / pi` as an exact rational.
    pub fn delta_over_pi(&self) -> BigRational {
        BigRational::new(BigInt::from(self.n as u64 * self.theta.num()), BigInt::from(self.theta.den()))
            - BigRational::from_integer(BigInt::from(2 * self.m))
    }
}

impl fmt::Display for ArgVariation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}pi (n = {}, m = {})", self.delta_over_pi(), self.n, self.m)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CrossingKind {
    /// `p` crosses the real axis; `g2_sign` is the sign of the real part there.
    G1Zero { g2_sign: i32 },
    /// `p` crosses the imaginary axis; `g1_sign` is the sign of the imaginary part.
    G2Zero { g1_sign: i32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingEvent {
    pub interval: IsolatingInterval,
    pub kind: CrossingKind,
}

/// Axis crossings of `p(t e^{i theta})` in order of increasing `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadrantTrace {
    pub theta: Angle,
    pub degree: usize,
    pub events: Vec<CrossingEvent>,
    /// Signs of `(g2(0), g1(0+))`.
    pub initial: (i32, i32),
    /// Signs of `(g2, g1)` as `t -> inf`.
    pub terminal: (i32, i32),
    /// Net quarter turns: the final argument lies in
    /// `[q pi/2, (q+1) pi/2]`.
    pub quarter_turns: i64,
}

impl QuadrantTrace {
    /// The unique `m` with `n theta/pi - 2m` in the final quadrant.
    pub fn variation(&self) -> Result<ArgVariation> {
        let x = BigRational::new(
            BigInt::from(self.degree as u64 * self.theta.num()),
            BigInt::from(self.theta.den()),
        );
        let q = self.quarter_turns;
        // 2m lies in [x - (q+1)/2, x - q/2], an interval of length 1/2
        let lo = &x - BigRational::new(BigInt::from(q + 1), BigInt::from(2));
        let hi = &x - BigRational::new(BigInt::from(q), BigInt::from(2));
        let m = (lo / BigRational::from_integer(BigInt::from(2))).ceil().to_integer();
        let two_m = BigRational::from_integer(&m * 2);
        match usize::try_from(m) {
            Ok(m) if two_m <= hi && m <= self.degree => Ok(ArgVariation { n: self.degree, m, theta: self.theta }),
            _ => Err(Error::CertificationFailed(format!(
                "quadrant trace ended in quadrant {q}, inconsistent with n theta = {x} pi"
            ))),
        }
    }
}

/// Number of positive zeros of the imaginary ray component promised for a
/// polynomial with no zeros in the upper sector: `floor(n theta / pi)`.
pub fn expected_g1_zero_count(n: usize, theta: Angle) -> Result<usize> {
    if theta.multiple_is_integer(n as u64) {
        return Err(Error::DegenerateAngle { n, theta });
    }
    Ok(theta.multiple_floor(n as u64) as usize)
}

fn check_input(p: &Polynomial) -> Result<()> {
    if p.is_constant() {
        return Err(Error::DegreeZero);
    }
    if !p.is_nonneg().nonneg {
        return Err(Error::NotNonNegative);
    }
    Ok(())
}

const REFINED_TARGETS: [f64; 3] = [1e-30, 1e-60, 1e-120];

/// Fails with `ZeroOnRay` when some zero of `p` lies on the closed ray at
/// angle `theta`.
pub fn check_ray_clear(p: &Polynomial, theta: Angle) -> Result<()> {
    let roots = find_root_enclosures(p, DEFAULT_RADIUS_TARGET)?;
    check_roots_clear(p, &roots, theta)
}

pub(crate) fn check_roots_clear(p: &Polynomial, roots: &[RootEnclosure], theta: Angle) -> Result<()> {
    let on_ray = Error::ZeroOnRay { theta };
    if theta == Angle::pi() {
        return if roots.iter().any(|r| r.is_real && !r.center.re.is_positive()) { Err(on_ray) } else { Ok(()) };
    }
    if roots.iter().any(RootEnclosure::is_origin) {
        return Err(on_ray);
    }
    let prec = 128;
    let ray = theta.radians(prec);
    let suspicious = |rs: &[RootEnclosure]| -> Vec<usize> {
        rs.iter()
            .enumerate()
            .filter(|(_, r)| !r.is_real && !r.in_lower_half())
            .filter(|(_, r)| r.abs_arg(prec).map_or(true, |a| a.overlaps(&ray)))
            .map(|(i, _)| i)
            .collect()
    };
    let exact_on_ray = |r: &RootEnclosure| r.exact_abs_arg() == Some(theta.ratio());
    let mut current = roots.to_vec();
    let mut hits = suspicious(&current);
    for target in REFINED_TARGETS {
        if hits.is_empty() {
            return Ok(());
        }
        if hits.iter().any(|&i| exact_on_ray(&current[i])) {
            return Err(on_ray);
        }
        current = find_root_enclosures(p, target)?;
        hits = suspicious(&current);
    }
    if hits.is_empty() {
        Ok(())
    } else {
        Err(on_ray)
    }
}

/// Sign of `cp` on `(0, eps)`; `cp` must not vanish identically.
fn sign_near_zero(cp: &CertifiedPoly) -> Result<i32> {
    let core = cp.without_zero_root().ok_or(Error::DegenerateChain)?.with_resolved_signs()?;
    Ok(core.coeffs()[0].sign().expect("resolved"))
}

/// Sign of `cp` as `t -> inf`.
fn sign_at_infinity(cp: &CertifiedPoly) -> Result<i32> {
    let core = cp.without_zero_root().ok_or(Error::DegenerateChain)?.with_resolved_signs()?;
    Ok(core.coeffs().last().expect("nonempty").sign().expect("resolved"))
}

fn overlap(a: &IsolatingInterval, b: &IsolatingInterval) -> bool {
    a.lo < b.hi && b.lo < a.hi
}

const MAX_SEPARATION_ROUNDS: usize = 256;

/// Refines the two lists until no interval of one meets an interval of the
/// other. A persistent overlap means a common zero, i.e. a zero of `p` on
/// the ray.
fn separate(
    g1: &CertifiedPoly,
    a: &mut [IsolatingInterval],
    g2: &CertifiedPoly,
    b: &mut [IsolatingInterval],
    theta: Angle,
) -> Result<()> {
    let half = BigRational::new(1.into(), 2.into());
    for _ in 0..MAX_SEPARATION_ROUNDS {
        let mut clean = true;
        for i in 0..a.len() {
            for j in 0..b.len() {
                if overlap(&a[i], &b[j]) {
                    clean = false;
                    a[i] = refine_interval(g1, &a[i], &(a[i].width() * &half))?;
                    b[j] = refine_interval(g2, &b[j], &(b[j].width() * &half))?;
                }
            }
        }
        if clean {
            return Ok(());
        }
    }
    Err(Error::ZeroOnRay { theta })
}

fn quadrant(re: i32, im: i32) -> i64 {
    match (re > 0, im > 0) {
        (true, true) => 0,
        (false, true) => 1,
        (false, false) => 2,
        (true, false) => 3,
    }
}

fn step(from: (i32, i32), to: (i32, i32)) -> Result<i64> {
    match (quadrant(to.0, to.1) - quadrant(from.0, from.1)).rem_euclid(4) {
        1 => Ok(1),
        3 => Ok(-1),
        _ => Err(Error::CertificationFailed("inconsistent axis crossing".into())),
    }
}

/// The full crossing record of `p` along the ray.
pub fn trace_quadrants(p: &Polynomial, theta: Angle) -> Result<QuadrantTrace> {
    check_input(p)?;
    if p.coeff(0).is_zero() {
        return Err(Error::ZeroOnRay { theta });
    }
    check_ray_clear(p, theta)?;
    trace_unchecked(p, theta)
}

/// Trace for a polynomial already known to be clear of the ray.
pub(crate) fn trace_unchecked(p: &Polynomial, theta: Angle) -> Result<QuadrantTrace> {
    let (g1, g2) = ray_components(p, theta);
    let n = p.degree();
    if g1.is_identically_zero() {
        // p is real along the ray and never vanishes there
        return Ok(QuadrantTrace {
            theta,
            degree: n,
            events: Vec::new(),
            initial: (1, 0),
            terminal: (1, 0),
            quarter_turns: 0,
        });
    }
    let mut z1 = isolate_positive_zeros(&g1)?;
    let mut z2 = isolate_positive_zeros(&g2)?;
    separate(&g1, &mut z1, &g2, &mut z2, theta)?;
    let mut events = Vec::with_capacity(z1.len() + z2.len());
    for iv in z1 {
        let s = g2.sign_at(&iv.hi)?;
        events.push(CrossingEvent { interval: iv, kind: CrossingKind::G1Zero { g2_sign: s } });
    }
    for iv in z2 {
        let s = g1.sign_at(&iv.hi)?;
        events.push(CrossingEvent { interval: iv, kind: CrossingKind::G2Zero { g1_sign: s } });
    }
    events.sort_by(|a, b| a.interval.lo.cmp(&b.interval.lo));

    let initial = (1, sign_near_zero(&g1)?);
    let mut state = initial;
    let mut turns = if initial.1 > 0 { 0 } else { -1 };
    for e in &events {
        let next = match e.kind {
            CrossingKind::G1Zero { g2_sign } => {
                if g2_sign != state.0 {
                    return Err(Error::CertificationFailed("real-part sign changed off an isolating interval".into()));
                }
                (state.0, -state.1)
            }
            CrossingKind::G2Zero { g1_sign } => {
                if g1_sign != state.1 {
                    return Err(Error::CertificationFailed("imaginary-part sign changed off an isolating interval".into()));
                }
                (-state.0, state.1)
            }
        };
        turns += step(state, next)?;
        state = next;
    }
    let terminal = (sign_at_infinity(&g2)?, sign_at_infinity(&g1)?);
    if terminal != state {
        return Err(Error::CertificationFailed("crossing record disagrees with the leading terms".into()));
    }
    Ok(QuadrantTrace { theta, degree: n, events, initial, terminal, quarter_turns: turns })
}

/// `Delta(p; theta)` for `p` with non-negative coefficients and `p(0) > 0`.
pub fn argument_variation(p: &Polynomial, theta: Angle) -> Result<ArgVariation> {
    trace_quadrants(p, theta)?.variation()
}

/// Number of zeros with `0 < arg z < theta`, counted with multiplicity.
pub fn zeros_in_upper_sector(p: &Polynomial, theta: Angle) -> Result<usize> {
    Ok(argument_variation(p, theta)?.m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c).unwrap()
    }

    fn a(n: u64, d: u64) -> Angle {
        Angle::new(n, d).unwrap()
    }

    #[test]
    fn quadratic_with_roots_at_two_thirds_pi() {
        let v = argument_variation(&p(&[1, 1, 1]), a(1, 2)).unwrap();
        assert_eq!((v.n, v.m), (2, 0));
        assert_eq!(v.delta_over_pi(), rat(1, 1));
        let v = argument_variation(&p(&[1, 1, 1]), a(9, 10)).unwrap();
        assert_eq!(v.m, 1);
        assert_eq!(v.delta_over_pi(), rat(-1, 5));
        assert_eq!(zeros_in_upper_sector(&p(&[1, 1, 1]), a(1, 2)).unwrap(), 0);
        assert_eq!(zeros_in_upper_sector(&p(&[1, 1, 1]), a(9, 10)).unwrap(), 1);
    }

    #[test]
    fn linear_and_cube() {
        let v = argument_variation(&p(&[1, 1]), a(1, 2)).unwrap();
        assert_eq!((v.m, v.delta_over_pi()), (0, rat(1, 2)));
        assert_eq!(zeros_in_upper_sector(&p(&[1, 3, 3, 1]), a(1, 2)).unwrap(), 0);
        let t = trace_quadrants(&p(&[1, 1]), a(1, 4)).unwrap();
        assert!(t.events.is_empty());
        assert_eq!(t.variation().unwrap().delta_over_pi(), rat(1, 4));
    }

    #[test]
    fn trace_of_quadratic_on_imaginary_axis() {
        let t = trace_quadrants(&p(&[1, 1, 1]), a(1, 2)).unwrap();
        assert_eq!(t.events.len(), 1);
        assert_eq!(t.events[0].kind, CrossingKind::G2Zero { g1_sign: 1 });
        assert!(t.events[0].interval.contains(&rat(1, 1)));
        assert_eq!(t.initial, (1, 1));
        assert_eq!(t.quarter_turns, 1);
    }

    #[test]
    fn trace_of_fourth_power() {
        let t = trace_quadrants(&p(&[1, 4, 6, 4, 1]), a(3, 5)).unwrap();
        let g1_zeros = t.events.iter().filter(|e| matches!(e.kind, CrossingKind::G1Zero { .. })).count();
        assert_eq!(g1_zeros, 2);
        let v = t.variation().unwrap();
        assert_eq!((v.m, v.delta_over_pi()), (0, rat(12, 5)));
        let d = argument_variation(&p(&[4, 12, 12, 4]), a(3, 5)).unwrap();
        assert_eq!((d.m, d.delta_over_pi()), (0, rat(9, 5)));
    }

    #[test]
    fn zeros_on_the_ray_are_rejected() {
        let err = argument_variation(&p(&[1, 1, 1]), a(2, 3)).unwrap_err();
        assert_eq!(err, Error::ZeroOnRay { theta: a(2, 3) });
        assert!(matches!(argument_variation(&p(&[1, 0, 1]), a(1, 2)), Err(Error::ZeroOnRay { .. })));
        assert!(matches!(argument_variation(&p(&[1, 1]), Angle::pi()), Err(Error::ZeroOnRay { .. })));
        assert!(matches!(argument_variation(&p(&[0, 1, 1]), a(1, 3)), Err(Error::ZeroOnRay { .. })));
        assert_eq!(argument_variation(&p(&[1, -1]), a(1, 3)).unwrap_err(), Error::NotNonNegative);
    }

    #[test]
    fn half_turn_ray() {
        let v = argument_variation(&p(&[1, 1, 1]), Angle::pi()).unwrap();
        assert_eq!((v.m, v.delta_over_pi()), (1, rat(0, 1)));
    }

    #[test]
    fn expected_counts() {
        assert_eq!(expected_g1_zero_count(4, a(3, 5)).unwrap(), 2);
        assert!(matches!(expected_g1_zero_count(5, a(2, 5)), Err(Error::DegenerateAngle { n: 5, .. })));
        assert!(matches!(expected_g1_zero_count(2, a(1, 2)), Err(Error::DegenerateAngle { .. })));
    }
}
