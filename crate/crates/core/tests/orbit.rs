use gq::error::Error;
use gq::orbit::*;
use gq::spinor::*;
use std::f64::consts::PI;

#[test]
fn massive_scalar_is_type5() {
    for eta in [-1.0, 1.0] {
        let alpha = CoForm {
            a: M2::zeros(),
            k: Herm2::project(id2().scale(eta)),
        };
        let t = classify(&alpha, DEFAULT_TOL).unwrap();
        assert_eq!(t.type_id, 5);
        assert!((t.mass_sq - 1.0).abs() < 1e-15 && t.w_sq.abs() < 1e-15);
        assert_eq!(quantizability(&t), Quantizability::RQuantizable);
    }
}

#[test]
fn dirac_form_is_type5_quantizable() {
    let alpha = CoForm {
        a: sigma(3) * cplx(0.0, 1.0 / (8.0 * PI)),
        k: Herm2::identity(),
    };
    let t = classify(&alpha, DEFAULT_TOL).unwrap();
    assert_eq!(t.type_id, 5);
    assert!(t.w_sq < 0.0);
    assert_eq!(quantizability(&t), Quantizability::Quantizable { t: 1 });
}

#[test]
fn massless_form_is_type4() {
    for chi in [-1.0, 1.0] {
        for eta in [-1.0, 1.0] {
            let alpha = CoForm {
                a: sigma(3) * cplx(0.0, chi / (8.0 * PI)),
                k: Herm2::project(diag10().scale(eta)),
            };
            let t = classify(&alpha, DEFAULT_TOL).unwrap();
            assert_eq!(t.type_id, 4);
            assert!((t.s.unwrap() - chi / (4.0 * PI)).abs() < 1e-15);
            assert_eq!(t.sign_tr_p, Some(-eta));
        }
    }
}

#[test]
fn zero_form_is_degenerate() {
    assert!(matches!(
        classify(&CoForm::zero(), DEFAULT_TOL),
        Err(Error::Degenerate(_))
    ));
}

#[test]
fn type1_and_type6_rows() {
    let r1 = canonical_rep(&row_type(1, 1.0, 1.0, 1.0, 1)).unwrap();
    assert_eq!(r1.alpha.a, lower());
    let r6 = canonical_rep(&row_type(6, 2.0, 1.0, 1.0, 1)).unwrap();
    assert_eq!(*r6.alpha.k, sigma(3).scale(2.0));
    assert_eq!(
        quantizability(&classify(&r1.alpha, DEFAULT_TOL).unwrap()),
        Quantizability::NotListed
    );
}

#[test]
fn missing_parameter_reported() {
    let mut t = row_type(4, 1.0, 1.0, 1.0, 1);
    t.s = None;
    assert_eq!(canonical_rep(&t), Err(Error::MissingParameter("s")));
}

fn lower() -> M2 {
    M2::new(
        cplx(0.0, 0.0),
        cplx(0.0, 0.0),
        cplx(1.0, 0.0),
        cplx(0.0, 0.0),
    )
}

fn diag10() -> M2 {
    M2::new(
        cplx(1.0, 0.0),
        cplx(0.0, 0.0),
        cplx(0.0, 0.0),
        cplx(0.0, 0.0),
    )
}
