//! Sector membership of root enclosures and checkable certificates for the
//! derivative of a polynomial whose zeros avoid a sector.

use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::roots::{find_root_enclosures, RootEnclosure, DEFAULT_RADIUS_TARGET};
use crate::arith::{trig, BigFloat, Interval};
use crate::count::sturm_count_positive;
use crate::error::{Error, Result};
use crate::interlace::{interlaces, weakly_interlaces, ZeroList};
use crate::poly::{critical_ray_components, ray_components, Angle, Polynomial};
use crate::ray::{argument_variation, check_ray_clear, expected_g1_zero_count, ArgVariation};

const PREC: u32 = 128;
const REFINED_TARGETS: [f64; 3] = [1e-30, 1e-60, 1e-120];

/// `{z : |arg z| >= phi}`, with `z = 0` a member.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sector {
    phi: Angle,
}

impl Sector {
    pub const CONTAINS_ORIGIN: bool = true;

    pub fn new(phi: Angle) -> Self {
        Sector { phi }
    }

    pub fn phi(&self) -> Angle {
        self.phi
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Verified,
    Counterexample,
    Indeterminate,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Verified => "verified",
            Verdict::Counterexample => "counterexample",
            Verdict::Indeterminate => "indeterminate",
        }
    }

    /// Worst of two verdicts: a counterexample dominates, then indeterminate.
    fn combine(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Counterexample, _) | (_, Counterexample) => Counterexample,
            (Indeterminate, _) | (_, Indeterminate) => Indeterminate,
            _ => Verified,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// How a zero exactly on the boundary `|arg z| = phi` is judged.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BoundaryPolicy {
    #[default]
    Verified,
    Indeterminate,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CertifyOptions {
    pub radius_target: f64,
    pub boundary: BoundaryPolicy,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions { radius_target: DEFAULT_RADIUS_TARGET, boundary: BoundaryPolicy::default() }
    }
}

/// One root checked against a sector.
#[derive(Clone, Debug)]
pub struct RootMargin {
    pub enclosure: RootEnclosure,
    /// Enclosure of `|arg z|` in radians; `None` for the origin or a disk
    /// touching it.
    pub arg: Option<Interval>,
    /// `|arg z| / pi` when it is known exactly.
    pub exact_arg: Option<BigRational>,
    /// Enclosure of `|arg z| - phi` in radians; `None` when `arg` is.
    pub margin: Option<Interval>,
    pub verdict: Verdict,
}

fn judge(root: &RootEnclosure, phi: Angle, policy: BoundaryPolicy) -> RootMargin {
    if root.is_origin() {
        return RootMargin {
            enclosure: root.clone(),
            arg: None,
            exact_arg: None,
            margin: None,
            verdict: if Sector::CONTAINS_ORIGIN { Verdict::Verified } else { Verdict::Indeterminate },
        };
    }
    let arg = root.abs_arg(PREC);
    let phi_rad = phi.radians(PREC);
    let margin = arg.as_ref().map(|a| a.sub(&phi_rad, PREC));
    let mut out = RootMargin { enclosure: root.clone(), arg, exact_arg: None, margin, verdict: Verdict::Indeterminate };
    let zero = BigFloat::zero();
    match &out.margin {
        Some(m) if m.lo() >= &zero => out.verdict = Verdict::Verified,
        Some(m) if m.hi() < &zero => out.verdict = Verdict::Counterexample,
        _ => {
            if let Some(s) = root.exact_abs_arg() {
                let diff = &s - phi.ratio();
                out.margin = Some(trig::rational_pi(&diff, PREC));
                out.arg = Some(trig::rational_pi(&s, PREC));
                out.verdict = if diff.is_negative() {
                    Verdict::Counterexample
                } else if diff.is_zero() && policy == BoundaryPolicy::Indeterminate {
                    Verdict::Indeterminate
                } else {
                    Verdict::Verified
                };
                out.exact_arg = Some(s);
            }
        }
    }
    if out.exact_arg.is_none() && out.verdict == Verdict::Verified && root.is_real {
        out.exact_arg = root.exact_abs_arg();
    }
    out
}

/// Per-root margins against `sector` and the aggregate verdict.
pub fn sector_membership(roots: &[RootEnclosure], sector: Sector) -> (Vec<RootMargin>, Verdict) {
    membership_with(roots, sector, BoundaryPolicy::default())
}

fn membership_with(roots: &[RootEnclosure], sector: Sector, policy: BoundaryPolicy) -> (Vec<RootMargin>, Verdict) {
    let margins: Vec<RootMargin> = roots.iter().map(|r| judge(r, sector.phi, policy)).collect();
    let verdict = margins.iter().fold(Verdict::Verified, |v, m| v.combine(m.verdict));
    (margins, verdict)
}

/// Membership with root refinement while some margin straddles zero.
/// Returns the margins, verdict, and notes on each refinement.
fn certified_membership(
    p: &Polynomial,
    sector: Sector,
    options: &CertifyOptions,
    notes: &mut Vec<String>,
) -> Result<(Vec<RootMargin>, Verdict)> {
    let roots = find_root_enclosures(p, options.radius_target)?;
    let (mut margins, mut verdict) = membership_with(&roots, sector, options.boundary);
    for target in REFINED_TARGETS {
        if verdict != Verdict::Indeterminate || target >= options.radius_target {
            break;
        }
        notes.push(format!("margin straddles zero; refining enclosures of {p} to radius {target:e}"));
        let roots = find_root_enclosures(p, target)?;
        (margins, verdict) = membership_with(&roots, sector, options.boundary);
    }
    if verdict == Verdict::Indeterminate {
        notes.push(format!(
            "undecided at radius {:e} with precision ceiling {} bits",
            REFINED_TARGETS[REFINED_TARGETS.len() - 1],
            crate::precision::ceiling()
        ));
    }
    Ok((margins, verdict))
}

/// Outcome of checking the critical points of `p` against `S(phi)`.
#[derive(Clone, Debug)]
pub struct SectorCertificate {
    pub verdict: Verdict,
    pub phi: Angle,
    pub input: Polynomial,
    pub derivative: Polynomial,
    /// Margins of the zeros of the input itself (the hypothesis).
    pub input_margins: Vec<RootMargin>,
    /// Margins of the zeros of the derivative (the conclusion).
    pub root_margins: Vec<RootMargin>,
    pub proof_steps: Option<ProofStepReport>,
    pub precision_bits: u32,
    /// Refinements and undecided events, in order.
    pub events: Vec<String>,
}

fn precision_used(m: &[RootMargin]) -> u32 {
    m.iter().map(|r| r.enclosure.precision).max().unwrap_or(0)
}

fn check_nonneg(p: &Polynomial) -> Result<()> {
    if !p.is_nonneg().nonneg {
        return Err(Error::NotNonNegative);
    }
    Ok(())
}

/// Checks that every critical point of `p` lies in `S(phi)`.
pub fn verify_theorem(p: &Polynomial, phi: Angle) -> Result<SectorCertificate> {
    verify_theorem_with(p, phi, &CertifyOptions::default())
}

pub fn verify_theorem_with(p: &Polynomial, phi: Angle, options: &CertifyOptions) -> Result<SectorCertificate> {
    check_nonneg(p)?;
    if p.degree() < 2 {
        return Err(Error::HypothesisViolated(format!("degree {} is below 2", p.degree())));
    }
    let sector = Sector::new(phi);
    let mut events = Vec::new();
    let (input_margins, hyp) = certified_membership(p, sector, options, &mut events)?;
    if hyp != Verdict::Verified {
        return Err(Error::HypothesisViolated(format!("zeros of {p} are not certified in S({phi})")));
    }
    let derivative = p.derivative()?;
    let (root_margins, verdict) = certified_membership(&derivative, sector, options, &mut events)?;
    let precision_bits = precision_used(&input_margins).max(precision_used(&root_margins));
    Ok(SectorCertificate {
        verdict,
        phi,
        input: p.clone(),
        derivative,
        input_margins,
        root_margins,
        proof_steps: None,
        precision_bits,
        events,
    })
}

/// Lower bound on `min |arg z|` over the nonzero zeros of a polynomial.
#[derive(Clone, Debug)]
pub struct ArgumentBound {
    /// Encloses the minimum, in radians.
    pub radians: Interval,
    /// The minimum divided by `pi`, when known exactly.
    pub over_pi: Option<BigRational>,
    pub precision_bits: u32,
}

impl ArgumentBound {
    /// Certified lower bound in radians.
    pub fn lower(&self) -> &BigFloat {
        self.radians.lo()
    }
}

/// The largest `phi` with every zero in `S(phi)`, as a certified enclosure.
pub fn min_argument(p: &Polynomial) -> Result<ArgumentBound> {
    min_argument_with(p, DEFAULT_RADIUS_TARGET)
}

pub fn min_argument_with(p: &Polynomial, radius_target: f64) -> Result<ArgumentBound> {
    let roots = find_root_enclosures(p, radius_target)?;
    let mut best: Option<(Interval, Option<BigRational>)> = None;
    let mut bits = 0;
    for r in roots.iter().filter(|r| !r.is_origin()) {
        bits = bits.max(r.precision);
        let arg = r
            .abs_arg(PREC)
            .ok_or_else(|| Error::CertificationFailed("a root disk touches the origin".into()))?;
        let exact = r.exact_abs_arg();
        let arg = match &exact {
            Some(s) => trig::rational_pi(s, PREC),
            None => arg,
        };
        best = Some(match best {
            None => (arg, exact),
            Some((b, be)) => {
                if arg.hi() < b.lo() {
                    (arg, exact)
                } else if b.hi() < arg.lo() {
                    (b, be)
                } else {
                    // overlapping candidates: keep the hull of the minimum
                    let lo = arg.lo().clone().min(b.lo().clone());
                    let hi = arg.hi().clone().min(b.hi().clone());
                    let same = exact.is_some() && exact == be;
                    (Interval::new(lo, hi), if same { exact } else { None })
                }
            }
        });
    }
    let (radians, over_pi) =
        best.ok_or_else(|| Error::HypothesisViolated("the polynomial has no nonzero roots".into()))?;
    Ok(ArgumentBound { radians, over_pi, precision_bits: bits })
}

/// Each intermediate claim of the derivative argument, evaluated on one
/// instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofStepReport {
    pub theta: Angle,
    pub degree: usize,
    pub g1_count_expected: usize,
    pub g1_count_actual: usize,
    pub g1g2_interlace: bool,
    pub rolle_interlace: bool,
    pub h1h2_weak_interlace: bool,
    pub delta_p: ArgVariation,
    pub delta_pprime: ArgVariation,
}

impl ProofStepReport {
    pub fn all_pass(&self) -> bool {
        self.g1_count_actual == self.g1_count_expected
            && self.g1g2_interlace
            && self.rolle_interlace
            && self.h1h2_weak_interlace
            && self.delta_p.m == 0
            && self.delta_pprime.m == 0
    }
}

/// Evaluates the intermediate claims for `p` with no zeros in the closed
/// upper sector of opening `theta`.
pub fn verify_proof_steps(p: &Polynomial, theta: Angle) -> Result<ProofStepReport> {
    check_nonneg(p)?;
    let n = p.degree();
    if n < 2 {
        return Err(Error::HypothesisViolated(format!("degree {n} is below 2")));
    }
    if p.coeffs().iter().any(Zero::is_zero) {
        return Err(Error::HypothesisViolated("coefficients must be strictly positive".into()));
    }
    let expected = expected_g1_zero_count(n, theta)?;
    expected_g1_zero_count(n - 1, theta)?;
    let dp = p.derivative()?;
    check_ray_clear(p, theta)?;
    check_ray_clear(&dp, theta)?;
    let delta_p = argument_variation(p, theta)?;
    if delta_p.m != 0 {
        return Err(Error::HypothesisViolated(format!("{} zeros lie in the upper sector of angle {theta}", delta_p.m)));
    }
    let delta_pprime = argument_variation(&dp, theta)?;

    let (g1, g2) = ray_components(p, theta);
    let g1_count_actual = sturm_count_positive(&g1)?;
    let z1 = ZeroList::nonnegative_zeros(&g1)?;
    let z2 = ZeroList::nonnegative_zeros(&g2)?;
    let g1g2_interlace = interlaces(&z1, &z2)?;
    let d1 = ZeroList::nonnegative_zeros(&g1.derivative())?;
    let d2 = ZeroList::nonnegative_zeros(&g2.derivative())?;
    let rolle_interlace = interlaces(&z1, &d1)? && interlaces(&z2, &d2)?;
    let (h1, h2) = critical_ray_components(p, theta)?;
    let h1h2_weak_interlace =
        weakly_interlaces(&ZeroList::nonnegative_zeros(&h1)?, &ZeroList::nonnegative_zeros(&h2)?)?;
    Ok(ProofStepReport {
        theta,
        degree: n,
        g1_count_expected: expected,
        g1_count_actual,
        g1g2_interlace,
        rolle_interlace,
        h1h2_weak_interlace,
        delta_p,
        delta_pprime,
    })
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
    fn membership_examples() {
        let roots = find_root_enclosures(&p(&[1, 0, 1]), 1e-12).unwrap();
        let (m, v) = sector_membership(&roots, Sector::new(a(1, 3)));
        assert_eq!(v, Verdict::Verified);
        let want = std::f64::consts::PI / 6.0;
        assert!(m.iter().all(|r| (r.margin.as_ref().unwrap().mid_f64() - want).abs() < 1e-10));

        let roots = find_root_enclosures(&p(&[-1, 1]), 1e-12).unwrap();
        let (m, v) = sector_membership(&roots, Sector::new(a(1, 4)));
        assert_eq!(v, Verdict::Counterexample);
        assert!(m[0].margin.as_ref().unwrap().hi() < &BigFloat::zero());
    }

    #[test]
    fn boundary_roots_use_exact_arguments() {
        // (z^2+z+1)(2z+1) has zeros e^{+-2 pi i/3} and -1/2
        let q = p(&[1, 3, 3, 2]);
        let roots = find_root_enclosures(&q, 1e-12).unwrap();
        let (m, v) = sector_membership(&roots, Sector::new(a(2, 3)));
        assert_eq!(v, Verdict::Verified);
        assert_eq!(m.len(), 3);
        let exact: Vec<_> = m.iter().map(|r| r.exact_arg.clone()).collect();
        assert!(exact.contains(&Some(rat(1, 1))));
        assert_eq!(exact.iter().filter(|e| **e == Some(rat(2, 3))).count(), 2);
        let (_, v) = membership_with(&roots, Sector::new(a(2, 3)), BoundaryPolicy::Indeterminate);
        assert_eq!(v, Verdict::Indeterminate);
        let (_, v) = sector_membership(&roots, Sector::new(a(3, 4)));
        assert_eq!(v, Verdict::Counterexample);
    }

    #[test]
    fn theorem_examples() {
        let c = verify_theorem(&p(&[1, 1, 1]), a(2, 3)).unwrap();
        assert_eq!(c.verdict, Verdict::Verified);
        assert_eq!(c.root_margins.len(), 1);
        let c = verify_theorem(&p(&[1, 2, 3, 2, 1]), a(2, 3)).unwrap();
        assert_eq!(c.verdict, Verdict::Verified);
        assert_eq!(c.root_margins.len(), 3);
        assert_eq!(verify_theorem(&p(&[1, -1]), a(1, 3)).unwrap_err(), Error::NotNonNegative);
        assert!(matches!(verify_theorem(&p(&[1, 1, 1]), a(3, 4)), Err(Error::HypothesisViolated(_))));
    }

    #[test]
    fn min_argument_examples() {
        let m = min_argument(&p(&[1, 1, 1])).unwrap();
        assert_eq!(m.over_pi, Some(rat(2, 3)));
        assert!((m.radians.mid_f64() - 2.0 * std::f64::consts::PI / 3.0).abs() < 1e-10);
        assert_eq!(min_argument(&p(&[1, 3, 3, 1])).unwrap().over_pi, Some(rat(1, 1)));
        let m = min_argument(&p(&[1, 2, 2])).unwrap();
        assert_eq!(m.over_pi, Some(rat(3, 4)));
        assert!(m.lower().to_f64() <= 3.0 * std::f64::consts::PI / 4.0);
    }

    #[test]
    fn proof_steps_for_fourth_power() {
        let r = verify_proof_steps(&p(&[1, 4, 6, 4, 1]), a(3, 5)).unwrap();
        assert_eq!((r.g1_count_expected, r.g1_count_actual), (2, 2));
        assert!(r.g1g2_interlace && r.rolle_interlace && r.h1h2_weak_interlace);
        assert_eq!(r.delta_p.delta_over_pi(), rat(12, 5));
        assert_eq!(r.delta_pprime.delta_over_pi(), rat(9, 5));
        assert!(r.all_pass());
    }

    #[test]
    fn proof_steps_for_quadratic() {
        let r = verify_proof_steps(&p(&[1, 1, 1]), a(1, 3)).unwrap();
        assert_eq!((r.g1_count_expected, r.g1_count_actual), (0, 0));
        assert_eq!((r.delta_p.m, r.delta_p.delta_over_pi()), (0, rat(2, 3)));
        assert!(matches!(verify_proof_steps(&p(&[1, 1, 1]), a(1, 2)), Err(Error::DegenerateAngle { n: 2, .. })));
        assert!(matches!(verify_proof_steps(&p(&[1, 4, 6, 4, 1]), a(1, 2)), Err(Error::DegenerateAngle { .. })));
    }
}
