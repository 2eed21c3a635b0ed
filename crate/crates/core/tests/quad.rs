use gq::error::Error;
use gq::quad::*;
use gq::spinor::*;

#[test]
fn integrates_polynomials_exactly() {
    for n in 1..=20usize {
        let (x, w) = gauss_legendre(n);
        for deg in 0..2 * n {
            let q: f64 = x.iter().zip(&w).map(|(t, v)| v * t.powi(deg as i32)).sum();
            let exact = if deg % 2 == 1 {
                0.0
            } else {
                2.0 / (deg as f64 + 1.0)
            };
            assert!((q - exact).abs() < 1e-13, "n={n} deg={deg}");
        }
    }
}

#[test]
fn sixteen_point_reference() {
    let (x, w) = gauss_legendre(16);
    assert!((x[15] - 0.989_400_934_991_649_9).abs() < 1e-15);
    assert!((w[15] - 0.027_152_459_411_754_1).abs() < 1e-15);
}

#[test]
fn reduce_reports_nan() {
    let r = reduce_scalar(5000, |i| {
        if i == 4321 {
            C64::new(f64::NAN, 0.0)
        } else {
            C64::new(1.0, 0.0)
        }
    });
    assert!(matches!(r, Err(Error::Quadrature(_))));
    assert_eq!(
        reduce_scalar(5000, |_| C64::new(1.0, 0.0)).unwrap().re,
        5000.0
    );
}
