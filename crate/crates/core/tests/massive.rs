use gq::massive::*;
use gq::spinor::*;
use std::f64::consts::PI;

#[test]
fn r_examples() {
    let e1 = V2::new(cplx(1.0, 0.0), cplx(0.0, 0.0));
    let (k, a) = dirac_r(2.0, &e1, &e1).unwrap();
    assert_eq!(k.matrix(), id2().scale(2.0));
    assert_eq!(a.rep(), e1);
    let w = V2::new(cplx(2.0, 0.0), cplx(0.0, 0.0));
    let z = V2::new(cplx(0.5, 0.0), cplx(0.0, 0.0));
    let (k, _) = dirac_r(1.0, &w, &z).unwrap();
    assert!(
        (k.matrix()
            - M2::new(
                cplx(4.0, 0.0),
                cplx(0.0, 0.0),
                cplx(0.0, 0.0),
                cplx(0.25, 0.0)
            ))
        .norm()
            < 1e-15
    );
    assert!(dirac_r(1.0, &w, &w).is_err());
}

#[test]
fn section_at_base_is_identity() {
    let e1 = V2::new(cplx(1.0, 0.0), cplx(0.0, 0.0));
    let s = dirac_section(1.5, &Herm2::project(id2().scale(1.5)), &e1).unwrap();
    assert!((s.matrix() - id2()).norm() < 1e-15);
}

#[test]
fn beta_examples() {
    let r = 0.5f64.sqrt();
    let cases = [
        (V2::new(cplx(1.0, 0.0), cplx(0.0, 0.0)), [0.0, 0.0, 1.0]),
        (V2::new(cplx(0.0, 0.0), cplx(1.0, 0.0)), [0.0, 0.0, -1.0]),
        (V2::new(cplx(r, 0.0), cplx(r, 0.0)), [1.0, 0.0, 0.0]),
    ];
    for (z, u) in cases {
        let got = beta_sphere(&ProjSpinor::new(z).unwrap());
        assert!(norm3(&sub3(&got, &u)) < 1e-15);
        assert!(beta_inverse(&u).unwrap().dist(&ProjSpinor::new(z).unwrap()) < 1e-15);
    }
}

#[test]
fn statespace_at_rest() {
    for eta in [-1.0, 1.0] {
        let spec = MassiveSpec::new(2.0, eta, 1).unwrap();
        let k = Herm2::project(id2().scale(2.0));
        let v = statespace_dynvars(
            &spec,
            &k,
            &[0.0, 0.0, 1.0],
            FourVector::new(0.0, 0.0, 0.0, 0.0),
        )
        .unwrap();
        assert_eq!(v.p, FourVector::new(0.0, 0.0, 0.0, -2.0 * eta));
        assert!((v.l[2] - 1.0 / (4.0 * PI)).abs() < 1e-16 && v.l[0] == 0.0);
        assert_eq!(v.g, [0.0; 3]);
    }
}

#[test]
fn covering_shift_keeps_position() {
    let spec = MassiveSpec::new(1.3, -1.0, 0).unwrap();
    let k = h_map(FourVector::new(0.3, -0.2, 0.5, (1.69f64 + 0.38).sqrt()));
    let h = h_map(FourVector::new(0.1, 0.7, -0.4, 0.9));
    let base = nu2_kg(&spec, &k, &h).unwrap().1;
    for n in -3..=3 {
        let (k2, h2) = covering_shift(&spec, n, &k, &h);
        let moved = nu2_kg(&spec, &k2, &h2).unwrap().1;
        assert!(norm3(&sub3(&moved, &base)) < 1e-14);
    }
}
