//! Random polynomials with positive coefficients whose zeros all satisfy
//! `|arg z| >= phi`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::trig;
use crate::error::{Error, Result};
use crate::poly::{is_square_free, Angle, Polynomial};

const COS_DEN: i64 = 4096;
const MODULUS_DEN: i64 = 1024;

/// Relative frequencies of the factor shapes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ShapeWeights {
    /// `z + r`.
    pub real: f64,
    /// Conjugate pair with `pi/2 <= |arg| < pi`.
    pub obtuse: f64,
    /// Conjugate pair with `phi <= |arg| < pi/2`.
    pub acute: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorConfig {
    pub shapes: ShapeWeights,
    /// Moduli are drawn log-uniformly from this range.
    pub modulus_range: (f64, f64),
    pub max_attempts: usize,
    /// Every pair factor uses this argument instead of a random one.
    pub fixed_pair_angle: Option<Angle>,
    /// Every factor uses this modulus instead of a random one.
    pub fixed_modulus: Option<BigRational>,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            shapes: ShapeWeights { real: 1.0, obtuse: 1.0, acute: 1.0 },
            modulus_range: (0.5, 2.0),
            max_attempts: 2000,
            fixed_pair_angle: None,
            fixed_modulus: None,
        }
    }
}

/// Independent seed for instance `index` of a campaign.
pub fn instance_seed(seed: u64, index: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng.next_u64()
}

/// `t^2 - 2 r c t + r^2`: zeros `r e^{+-i psi}` with `cos psi = c`.
pub fn pair_factor(r: &BigRational, c: &BigRational) -> Polynomial {
    let two = BigRational::from_integer(BigInt::from(2));
    Polynomial::new(vec![r * r, -(two * r * c), BigRational::one()]).expect("monic")
}

/// `t + r`.
pub fn real_factor(r: &BigRational) -> Polynomial {
    Polynomial::new(vec![r.clone(), BigRational::one()]).expect("monic")
}

fn snap(x: f64, den: i64, up: bool) -> BigRational {
    let v = x * den as f64;
    let k = if up { v.ceil() } else { v.floor() };
    BigRational::new(BigInt::from(k as i64), BigInt::from(den))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Shape {
    Real,
    Obtuse,
    Acute,
}

struct Sampler<'a> {
    phi: Angle,
    /// Largest admissible cosine: zeros need `cos psi <= cos phi`.
    cos_phi: CosBound,
    config: &'a GeneratorConfig,
}

enum CosBound {
    Exact(BigRational),
    /// Strictly below the true value.
    Below(BigRational),
}

impl CosBound {
    fn admits(&self, c: &BigRational, allow_equal: bool) -> bool {
        match self {
            CosBound::Exact(v) => c < v || (allow_equal && c == v),
            CosBound::Below(v) => c <= v,
        }
    }
}

impl<'a> Sampler<'a> {
    fn new(phi: Angle, config: &'a GeneratorConfig) -> Self {
        let cos_phi = match trig::exact_sin_cos_pi(&phi.ratio()).1 {
            Some(c) => CosBound::Exact(c),
            None => {
                let (_, c) = trig::sin_cos_pi(&phi.ratio(), 96);
                CosBound::Below(c.lo().to_rational() - BigRational::new(1.into(), BigInt::one() << 90))
            }
        };
        Sampler { phi, cos_phi, config }
    }

    fn modulus(&self, rng: &mut impl Rng) -> BigRational {
        if let Some(r) = &self.config.fixed_modulus {
            return r.clone();
        }
        let (lo, hi) = self.config.modulus_range;
        let x = (lo.ln() + rng.gen::<f64>() * (hi.ln() - lo.ln())).exp();
        let r = snap(x, MODULUS_DEN, false);
        if r.is_zero() {
            BigRational::new(1.into(), MODULUS_DEN.into())
        } else {
            r
        }
    }

    fn pair(&self, shape: Shape, rng: &mut impl Rng) -> Option<Polynomial> {
        let r = self.modulus(rng);
        if let Some(psi) = self.config.fixed_pair_angle {
            let c = match trig::exact_sin_cos_pi(&psi.ratio()).1 {
                Some(c) => c,
                None => snap(psi.float_hint().cos(), COS_DEN, false),
            };
            return (c > -BigRational::one() && self.cos_phi.admits(&c, true)).then(|| pair_factor(&r, &c));
        }
        let phi = self.phi.float_hint();
        let half = std::f64::consts::FRAC_PI_2;
        let (lo, hi) = match shape {
            Shape::Acute => (phi, half),
            _ => (phi.max(half), std::f64::consts::PI),
        };
        let psi = lo + rng.gen::<f64>() * (hi - lo);
        let mut c = snap(psi.cos(), COS_DEN, false);
        let step = BigRational::new(1.into(), COS_DEN.into());
        if shape == Shape::Obtuse {
            // keep the pair strictly inside the open left half-plane
            c = c.max(&step - BigRational::one()).min(-step);
        }
        (c > -BigRational::one() && self.cos_phi.admits(&c, false)).then(|| pair_factor(&r, &c))
    }

    fn shape(&self, damping: f64, rng: &mut impl Rng) -> Shape {
        let w = self.config.shapes;
        let acute = if self.phi.float_hint() < std::f64::consts::FRAC_PI_2 { w.acute * damping } else { 0.0 };
        let total = w.real + w.obtuse + acute;
        if total <= 0.0 {
            return Shape::Obtuse;
        }
        let x = rng.gen::<f64>() * total;
        if x < w.real {
            Shape::Real
        } else if x < w.real + w.obtuse {
            Shape::Obtuse
        } else {
            Shape::Acute
        }
    }

    fn attempt(&self, n: usize, damping: f64, rng: &mut impl Rng) -> Option<Polynomial> {
        let mut p = Polynomial::constant(BigRational::one()).expect("nonzero");
        let mut factors: Vec<Polynomial> = Vec::new();
        let mut left = n;
        let mut redraws = 0;
        while left > 0 {
            let shape = if left == 1 { Shape::Real } else { self.shape(damping, rng) };
            let f = match shape {
                Shape::Real => real_factor(&self.modulus(rng)),
                _ => self.pair(shape, rng)?,
            };
            if factors.contains(&f) {
                redraws += 1;
                if redraws > 64 {
                    return None;
                }
                continue;
            }
            left -= f.degree();
            p = p.mul(&f);
            factors.push(f);
        }
        let positive = p.coeffs().iter().all(|c| c > &BigRational::zero());
        (positive && is_square_free(&p)).then_some(p)
    }
}

/// A degree-`n` polynomial with strictly positive rational coefficients and
/// simple zeros, all with `|arg| >= phi`. Deterministic in `seed`.
pub fn generate_sector_poly(n: usize, phi: Angle, seed: u64, config: &GeneratorConfig) -> Result<Polynomial> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("degree {n} below 2")));
    }
    let sampler = Sampler::new(phi, config);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut damping = 1.0;
    for _ in 0..config.max_attempts {
        if let Some(p) = sampler.attempt(n, damping, &mut rng) {
            return Ok(p);
        }
        damping *= 0.97;
    }
    Err(Error::GenerationExhausted { attempts: config.max_attempts })
}

/// Largest denominator of a sampled angle.
pub const ANGLE_DENOMINATOR_MAX: u64 = 60;

/// Draw from the rational multiples `a/b pi` in `(0, max]` with `b <= max_den`:
/// the denominator is uniform, then the numerator.
pub fn sample_angle(rng: &mut impl Rng, max: Angle, max_den: u64) -> Angle {
    sample_angle_between(rng, None, max, max_den)
}

/// As [`sample_angle`] on `[lo, hi]` (or `(0, hi]` without `lo`).
pub fn sample_angle_between(rng: &mut impl Rng, lo: Option<Angle>, hi: Angle, max_den: u64) -> Angle {
    let max_den = max_den.max(hi.den()).max(lo.map_or(1, |a| a.den()));
    loop {
        let den = rng.gen_range(1..=max_den);
        let top = (u128::from(hi.num()) * u128::from(den) / u128::from(hi.den())) as u64;
        let bottom = match lo {
            Some(a) => (u128::from(a.num()) * u128::from(den)).div_ceil(u128::from(a.den())) as u64,
            None => 1,
        }
        .max(1);
        if bottom > top {
            continue;
        }
        let num = rng.gen_range(bottom..=top);
        return Angle::new(num, den).expect("within (0, pi]");
    }
}

/// A reproducible campaign of random sector polynomials.
#[derive(Clone, Debug)]
pub struct FuzzSpec {
    pub seed: u64,
    /// Inclusive bounds on the sector angle.
    pub phi_range: (Angle, Angle),
    /// Inclusive bounds on the degree.
    pub degree_range: (usize, usize),
    pub config: GeneratorConfig,
}

impl FuzzSpec {
    pub fn new(seed: u64, phi_range: (Angle, Angle), degree_range: (usize, usize)) -> Result<Self> {
        let (lo, hi) = degree_range;
        if lo < 2 || lo > hi {
            return Err(Error::OutOfRange(format!("degree range {lo}:{hi}")));
        }
        if phi_range.0 > phi_range.1 {
            return Err(Error::OutOfRange(format!("angle range {}:{}", phi_range.0, phi_range.1)));
        }
        Ok(FuzzSpec { seed, phi_range, degree_range, config: GeneratorConfig::default() })
    }
}

#[derive(Clone, Debug)]
pub struct FuzzInstance {
    pub index: u64,
    /// Seed of this instance alone.
    pub seed: u64,
    pub degree: usize,
    pub phi: Angle,
    pub poly: Polynomial,
}

/// Instance `index` of a campaign; independent of every other index.
pub fn fuzz_instance(spec: &FuzzSpec, index: u64) -> Result<FuzzInstance> {
    let seed = instance_seed(spec.seed, index);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let degree = rng.gen_range(spec.degree_range.0..=spec.degree_range.1);
    let (lo, hi) = spec.phi_range;
    let phi = sample_angle_between(&mut rng, Some(lo), hi, ANGLE_DENOMINATOR_MAX);
    let poly = generate_sector_poly(degree, phi, rng.gen(), &spec.config)?;
    Ok(FuzzInstance { index, seed, degree, phi, poly })
}
