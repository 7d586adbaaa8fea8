use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sector_core::arith::{CInterval, Interval};
use sector_core::count::{descartes_bound, isolate_real_zeros, sturm_count_positive, sturm_count_real};
use sector_core::interlace::{interlaces, weakly_interlaces, ZeroList};
use sector_core::parse::parse_polynomial;
use sector_core::poly::{is_square_free, ray_components, Angle, CertifiedPoly, Polynomial};
use sector_core::sector::{
    find_root_enclosures, generate_sector_poly, sample_angle_between, verify_theorem, GeneratorConfig,
};

fn rational() -> impl Strategy<Value = BigRational> {
    (-40i64..=40, 1i64..=9).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

fn polynomial(max_degree: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(rational(), 2..=max_degree + 1)
        .prop_filter_map("nonconstant", |c| Polynomial::new(c).ok().filter(|p| !p.is_constant()))
}

fn angle() -> impl Strategy<Value = Angle> {
    (1u64..=60).prop_flat_map(|d| (1..=d).prop_map(move |n| Angle::new(n, d).unwrap()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn display_parses_back(p in polynomial(10)) {
        prop_assert_eq!(parse_polynomial(&p.to_string()).unwrap(), p.clone());
        prop_assert_eq!(parse_polynomial(&p.to_coeff_string()).unwrap(), p);
    }

    #[test]
    fn sturm_agrees_with_descartes(p in polynomial(10).prop_filter("square-free", is_square_free)) {
        let cp = CertifiedPoly::from_polynomial(&p);
        let exact = sturm_count_positive(&cp).unwrap();
        let bound = descartes_bound(&cp).unwrap();
        prop_assert!(exact <= bound);
        prop_assert_eq!((bound - exact) % 2, 0);
    }

    #[test]
    fn isolating_intervals_are_sorted_and_signed(p in polynomial(10).prop_filter("square-free", is_square_free)) {
        let cp = CertifiedPoly::from_polynomial(&p);
        let ivs = isolate_real_zeros(&cp).unwrap();
        let at_zero = usize::from(cp.zero_root_multiplicity() > 0);
        prop_assert_eq!(ivs.len() + at_zero, sturm_count_real(&cp).unwrap());
        for w in ivs.windows(2) {
            prop_assert!(w[0].hi <= w[1].lo);
        }
        for iv in &ivs {
            // (lo, hi] holds one simple zero: a sign change or a zero at hi;
            // when lo is itself a (simple) zero, p has the sign of p' just right of it
            let mut a = p.eval(&iv.lo);
            if a.is_zero() {
                a = p.derivative().unwrap().eval(&iv.lo);
            }
            let b = p.eval(&iv.hi);
            prop_assert!(b.is_zero() || (a * b) < BigRational::zero());
        }
    }

    #[test]
    fn enclosures_contain_roots(p in polynomial(8)) {
        let roots = find_root_enclosures(&p, 1e-12).unwrap();
        let total: usize = roots.iter().map(|r| r.multiplicity).sum();
        prop_assert_eq!(total, p.degree());
        for r in &roots {
            let widen = |c: &sector_core::arith::BigFloat| Interval::point(c.clone()).inflate(&r.radius, 128);
            let disk = CInterval::new(widen(&r.center.re), widen(&r.center.im));
            prop_assert!(p.evaluate_complex(&disk, 128).contains_zero());
        }
    }

    #[test]
    fn ray_components_match_complex_evaluation(p in polynomial(12), theta in angle(), t in rational()) {
        let (g1, g2) = ray_components(&p, theta);
        let prec = 128;
        let tv = Interval::from_rational(&t, prec);
        let (s, c) = theta.sin_cos_multiple(1, prec);
        let z = CInterval::new(tv.mul(&c, prec), tv.mul(&s, prec));
        let v = p.evaluate_complex(&z, prec);
        prop_assert!(v.im.overlaps(&g1.at_precision(prec).eval(&tv)));
        prop_assert!(v.re.overlaps(&g2.at_precision(prec).eval(&tv)));
    }

    #[test]
    fn strict_interlacing_is_weak(a in prop::collection::btree_set(-50i64..50, 0..8),
                                  b in prop::collection::btree_set(-50i64..50, 0..8)) {
        prop_assume!(a.is_disjoint(&b));
        let za = ZeroList::from_ints(&a.into_iter().collect::<Vec<_>>()).unwrap();
        let zb = ZeroList::from_ints(&b.into_iter().collect::<Vec<_>>()).unwrap();
        if interlaces(&za, &zb).unwrap() {
            prop_assert!(weakly_interlaces(&za, &zb).unwrap());
        }
        prop_assert_eq!(interlaces(&za, &zb).unwrap(), interlaces(&zb, &za).unwrap());
    }

    #[test]
    fn sampled_angles_stay_in_range(seed in any::<u64>(), lo in angle(), hi in angle()) {
        prop_assume!(lo <= hi);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = sample_angle_between(&mut rng, Some(lo), hi, 60);
        prop_assert!(lo <= a && a <= hi);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn verdict_is_scale_invariant(seed in any::<u64>(), n in 2usize..=10, phi in angle(), scale in 1i64..=50) {
        prop_assume!(phi.ratio() <= BigRational::new(9.into(), 10.into()));
        let p = generate_sector_poly(n, phi, seed, &GeneratorConfig::default()).unwrap();
        let scaled = p.scale(&BigRational::new(scale.into(), 7.into()));
        let a = verify_theorem(&p, phi).unwrap();
        let b = verify_theorem(&scaled, phi).unwrap();
        prop_assert_eq!(a.verdict, b.verdict);
        prop_assert_eq!(a.root_margins.len(), b.root_margins.len());
        // substituting z -> s z leaves every argument unchanged
        let stretched = p.substitute_scale(&BigRational::new(3.into(), 2.into()));
        prop_assert_eq!(verify_theorem(&stretched, phi).unwrap().verdict, a.verdict);
    }
}
