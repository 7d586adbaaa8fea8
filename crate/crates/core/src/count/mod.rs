//! Counting and isolating positive real zeros: Descartes' rule of signs and
//! Sturm chains.

mod isolate;
mod sturm;

pub use isolate::{
    isolate_positive_zeros, isolate_real_zeros, refine_interval, root_bound, sturm_count_positive,
    sturm_count_real, IsolatingInterval,
};
pub use sturm::SturmChain;

use crate::error::Result;
use crate::poly::CertifiedPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
    Zero,
}

impl Sign {
    pub fn from_i32(s: i32) -> Sign {
        match s.signum() {
            1 => Sign::Positive,
            -1 => Sign::Negative,
            _ => Sign::Zero,
        }
    }

    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
            Sign::Zero => 0,
        }
    }
}

/// Signs of a coefficient sequence, ascending by power.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignSequence(pub Vec<Sign>);

impl SignSequence {
    /// Parses `"+-0"`-style shorthand; other characters are ignored.
    pub fn parse(s: &str) -> Self {
        SignSequence(
            s.chars()
                .filter_map(|c| match c {
                    '+' => Some(Sign::Positive),
                    '-' => Some(Sign::Negative),
                    '0' => Some(Sign::Zero),
                    _ => None,
                })
                .collect(),
        )
    }

    /// Coefficient signs of `cp`, refining until each is certified.
    pub fn of(cp: &CertifiedPoly) -> Result<Self> {
        let cp = cp.with_resolved_signs()?;
        Ok(SignSequence(cp.coeffs().iter().map(|c| Sign::from_i32(c.sign().expect("resolved"))).collect()))
    }
}

/// Number of sign changes after deleting zeros.
pub fn sign_variations(s: &SignSequence) -> usize {
    let mut last = Sign::Zero;
    let mut count = 0;
    for &x in &s.0 {
        if x == Sign::Zero {
            continue;
        }
        if last != Sign::Zero && x != last {
            count += 1;
        }
        last = x;
    }
    count
}

/// Descartes' upper bound on the number of positive zeros.
pub fn descartes_bound(cp: &CertifiedPoly) -> Result<usize> {
    Ok(sign_variations(&SignSequence::of(cp)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{certified_from_ints, ray_components, Angle, Polynomial};

    #[test]
    fn variations_skip_zeros() {
        assert_eq!(sign_variations(&SignSequence::parse("+-+")), 2);
        assert_eq!(sign_variations(&SignSequence::parse("+0+")), 0);
        assert_eq!(sign_variations(&SignSequence::parse("+0-")), 1);
        assert_eq!(sign_variations(&SignSequence::parse("")), 0);
    }

    #[test]
    fn descartes_on_ray_components() {
        let p = Polynomial::from_ints(&[1, 4, 6, 4, 1]).unwrap();
        let (g1, _) = ray_components(&p, Angle::new(3, 5).unwrap());
        assert_eq!(SignSequence::of(&g1).unwrap(), SignSequence::parse("0+--+"));
        assert_eq!(descartes_bound(&g1).unwrap(), 2);

        let q = Polynomial::from_ints(&[1, 1, 1]).unwrap();
        let (g1, _) = ray_components(&q, Angle::new(1, 2).unwrap());
        assert_eq!(descartes_bound(&g1).unwrap(), 0);

        assert_eq!(descartes_bound(&certified_from_ints(&[1, 0, -1])).unwrap(), 1);
    }
}
