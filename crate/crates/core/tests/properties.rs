use gq::cli::num;
use gq::massless::MasslessSpec;
use gq::measure::{ChartId, ChartPoint, Profile};
use gq::orbit::*;
use gq::rep::{rep_on_f, RepFunction};
use gq::sample;
use gq::spinor::*;
use gq::twistor::*;
use proptest::prelude::*;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn group_law_is_associative_with_inverses(seed in any::<u64>(), s in 0.1f64..1.0) {
        let mut r = sample::rng(seed);
        let (a, b, c) = (sample::group(&mut r, s), sample::group(&mut r, s), sample::group(&mut r, s));
        let lhs = a.mul(&b).mul(&c);
        let rhs = a.mul(&b.mul(&c));
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-12 * (1.0 + max_abs(&lhs.h)));
        prop_assert!(a.mul(&a.inv()).max_abs_diff(&GroupElem::identity()) <= 1e-12 * (1.0 + max_abs(&a.h)));
    }

    #[test]
    fn pairing_is_invariant(seed in any::<u64>()) {
        let mut r = sample::rng(seed);
        let g = sample::group(&mut r, 0.7);
        let alpha = sample::coform(&mut r, 1.0);
        let x = sample::alg(&mut r, 1.0);
        let before = pairing(&alpha, &x);
        let after = pairing(&coadjoint(&g, &alpha), &adjoint(&g, &x));
        prop_assert!(close(before, after, 1e-10));
    }

    #[test]
    fn coadjoint_is_a_homomorphism(seed in any::<u64>()) {
        let mut r = sample::rng(seed);
        let (g1, g2) = (sample::group(&mut r, 0.5), sample::group(&mut r, 0.5));
        let alpha = sample::coform(&mut r, 1.0);
        let lhs = coadjoint(&g1.mul(&g2), &alpha);
        let rhs = coadjoint(&g1, &coadjoint(&g2, &alpha));
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-11 * (1.0 + lhs.norm()));
    }

    #[test]
    fn exp_is_a_one_parameter_subgroup(seed in any::<u64>(), s in -1.5f64..1.5, t in -1.5f64..1.5) {
        let mut r = sample::rng(seed);
        let x = sample::alg(&mut r, 1.0);
        let lhs = alg_exp(&x, s + t);
        let rhs = alg_exp(&x, s).mul(&alg_exp(&x, t));
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-11 * (1.0 + max_abs(&lhs.a) + max_abs(&lhs.h)));
    }

    #[test]
    fn orbit_type_is_constant_along_orbits(seed in any::<u64>(), id in 1u8..=9, eta in prop::sample::select(vec![-1.0, 1.0]), t in 1u32..=3) {
        let mut r = sample::rng(seed);
        let alpha = canonical_rep(&row_type(id, 1.0, eta, 1.0, t)).unwrap().alpha;
        let moved = coadjoint(&sample::group(&mut r, 0.5), &alpha);
        prop_assert_eq!(classify(&moved, DEFAULT_TOL).unwrap().type_id, id);
        let (p0, w0) = orbit_invariants(&alpha);
        let (p1, w1) = orbit_invariants(&moved);
        prop_assert!(close(p0, p1, 1e-9) && close(w0, w1, 1e-9));
    }

    #[test]
    fn dynamical_variables_round_trip(seed in any::<u64>()) {
        let mut r = sample::rng(seed);
        let alpha = sample::coform(&mut r, 2.0);
        prop_assert!(dyn_vars(&alpha).to_coform().max_abs_diff(&alpha) <= 1e-13 * (1.0 + alpha.norm()));
    }

    #[test]
    fn h_map_carries_the_minkowski_square(seed in any::<u64>()) {
        let mut r = sample::rng(seed);
        let x = sample::four(&mut r, 3.0);
        let h = h_map(x);
        prop_assert!(close(h.det(), x.square(), 1e-13));
        prop_assert!(h_inv(&h.matrix(), &Tol::default()).unwrap().sub(&x).max_abs() <= 1e-14 * (1.0 + x.max_abs()));
    }

    #[test]
    fn pi_is_equivariant(seed in any::<u64>(), eta in prop::sample::select(vec![-1.0, 1.0]), chi in prop::sample::select(vec![-1.0, 1.0])) {
        let spec = MasslessSpec::new(eta, chi, 1).unwrap();
        let mut r = sample::rng(seed);
        let z = loop {
            let z = Twistor::from_components([0; 4].map(|_| sample::cnormal(&mut r)));
            if z.phi() * spec.nu() > 0.05 {
                break z;
            }
        };
        let g = sample::group(&mut r, 0.7);
        let lhs = pi_map(&spec, &mu1_act(&g, &z)).unwrap();
        let rhs = coadjoint(&g, &pi_map(&spec, &z).unwrap());
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-10 * rhs.norm().max(1.0));
    }

    #[test]
    fn scalar_representation_is_a_homomorphism(seed in any::<u64>(), eta in prop::sample::select(vec![-1.0, 1.0])) {
        let prof = Profile::bump(ChartId::HM, &[0.2, 0.1, -0.1], 0.9, cplx(1.0, 0.2));
        let f = RepFunction::klein_gordon(1.0, eta, prof);
        let mut r = sample::rng(seed);
        let (g1, g2) = (sample::group(&mut r, 0.2), sample::group(&mut r, 0.2));
        let c: Vec<f64> = (0..3).map(|_| sample::uniform(&mut r, -0.4, 0.4)).collect();
        let p = f.carrier.point_of(&ChartPoint::from_coords(ChartId::HM, &c).unwrap()).unwrap();
        let lhs = rep_on_f(&g1, &rep_on_f(&g2, &f)).eval(&p).unwrap();
        let rhs = rep_on_f(&g1.mul(&g2), &f).eval(&p).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + rhs.norm()));
    }

    #[test]
    fn printed_numbers_round_trip(x in any::<f64>().prop_filter("finite", |x| x.is_finite())) {
        prop_assert_eq!(num(x).parse::<f64>().unwrap(), x);
    }
}
