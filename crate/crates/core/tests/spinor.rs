use gq::error::Error;
use gq::spinor::*;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

#[test]
fn h_map_basics() {
    assert_eq!(h_map(FourVector::new(0.0, 0.0, 0.0, 1.0)).matrix(), id2());
    assert_eq!(
        h_map(FourVector::new(1.0, 0.0, 0.0, 0.0)).matrix(),
        sigma(1)
    );
    let x = FourVector::new(3.0, 0.0, 4.0, 5.0);
    assert!(h_map(x).det().abs() < 1e-14);
}

#[test]
fn h_inv_rejects_non_hermitian() {
    let m = M2::new(ONE, ONE, ZERO, ONE);
    assert!(matches!(
        h_inv(&m, &Tol::default()),
        Err(Error::NotHermitian(_))
    ));
    assert_eq!(
        h_inv(&sigma(3), &Tol::default()).unwrap(),
        FourVector::new(0.0, 0.0, 1.0, 0.0)
    );
}

#[test]
fn pairing_examples() {
    let alpha = CoForm {
        a: M2::zeros(),
        k: Herm2::identity(),
    };
    assert!((pairing(&alpha, &AlgElem::p(4)) + 1.0).abs() < 1e-15);
    for eta in [-1.0, 1.0] {
        let m = 1.7;
        let a0 = CoForm {
            a: M2::zeros(),
            k: Herm2::project(id2().scale(eta * m)),
        };
        assert!((pairing(&a0, &AlgElem::p(4)) + eta * m).abs() < 1e-14);
    }
}

#[test]
fn dyn_vars_examples() {
    let d = dyn_vars(&CoForm {
        a: sigma(3).scale(0.5),
        k: Herm2::zero(),
    });
    assert_eq!(d.g, [0.0, 0.0, -1.0]);
    assert_eq!(d.l, [0.0, 0.0, 0.0]);
    let eta = -1.0;
    let d = dyn_vars(&CoForm {
        a: M2::zeros(),
        k: Herm2::project(id2().scale(eta * 2.0)),
    });
    assert_eq!(d.p, FourVector::new(0.0, 0.0, 0.0, -eta * 2.0));
}

#[test]
fn pauli_lubanski_dirac_point() {
    for eta in [-1.0, 1.0] {
        let m = 1.3;
        let alpha = CoForm {
            a: sigma(3) * cplx(0.0, 1.0 / (8.0 * std::f64::consts::PI)),
            k: Herm2::project(id2().scale(eta * m)),
        };
        let w = h_map(pauli_lubanski(&alpha)).matrix();
        let expect = sigma(3).scale(-eta * m / (4.0 * std::f64::consts::PI));
        assert!(max_abs(&(w - expect)) < 1e-15);
        let (p2, w2) = orbit_invariants(&alpha);
        assert!((p2 - m * m).abs() < 1e-14);
        assert!((w2 + (m / (4.0 * std::f64::consts::PI)).powi(2)).abs() < 1e-15);
    }
}

#[test]
fn exp_trivial_cases() {
    let h = Herm2::project(sigma(1) + id2());
    let g = alg_exp(&AlgElem { a: M2::zeros(), h }, 0.7);
    assert!(max_abs(&(*g.h - h.scale(0.7))) < 1e-15);
    assert!(max_abs(&(*g.a - id2())) < 1e-15);
    let a = sigma(3) * cplx(0.3, 0.2);
    let g = alg_exp(
        &AlgElem {
            a,
            h: Herm2::zero(),
        },
        1.5,
    );
    let expect = M2::new((a[(0, 0)] * 1.5).exp(), ZERO, ZERO, (a[(1, 1)] * 1.5).exp());
    assert!(max_abs(&(*g.a - expect)) < 1e-14);
    assert!(max_abs(&g.h) == 0.0);
}

#[test]
fn exp_integral_nilpotent_matches_polynomial() {
    // a² = 0: e^{sa} = I + s a, integrand is a quadratic polynomial.
    let a = M2::new(ZERO, cplx(1.0, 2.0), ZERO, ZERO);
    let h = sigma(1) + id2().scale(2.0);
    let t = 1.3;
    let got = exp_integral(&a, &h, t);
    let ad = a.adjoint();
    let expect =
        h.scale(t) + (a * h + h * ad).scale(t * t / 2.0) + (a * h * ad).scale(t.powi(3) / 3.0);
    assert!(max_abs(&(got - expect)) < 1e-13);
}
