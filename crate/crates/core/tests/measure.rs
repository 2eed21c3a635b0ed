use gq::error::Error;
use gq::measure::*;
use gq::spinor::*;

#[test]
fn density_examples() {
    let nu = Measure::Nu { m: 1.0 };
    assert_eq!(
        measure_density(&ChartPoint::Hm([0.0; 3]), &nu).unwrap(),
        1.0
    );
    assert_eq!(
        measure_density(&ChartPoint::Cplus([0.0, 0.0, 2.0]), &Measure::Omega).unwrap(),
        0.5
    );
    let mu = Measure::Mu { m: 1.0 };
    assert_eq!(
        measure_density(&ChartPoint::HmP1S([0.0; 3], cplx(0.0, 0.0)), &mu).unwrap(),
        1.0
    );
    assert!(measure_density(&ChartPoint::Cplus([0.0; 3]), &Measure::Omega).is_err());
    assert!(measure_density(&ChartPoint::Hm([0.0; 3]), &Measure::Omega).is_err());
}

#[test]
fn denominator_matches_chart_formula() {
    let m = 1.3;
    let p = [0.3, -0.7, 0.4];
    let z = cplx(0.6, -1.1);
    let p4 = (m * m + dot(&p, &p)).sqrt();
    let k = ChartPoint::HmP1S(p, z).momentum(m);
    let s =
        (z * cplx(p[0], -p[1])).re * 2.0 + (1.0 - z.norm_sqr()) * p[2] - (1.0 + z.norm_sqr()) * p4;
    let n =
        (z * cplx(p[0], p[1])).re * 2.0 + (z.norm_sqr() - 1.0) * p[2] - (1.0 + z.norm_sqr()) * p4;
    assert!((p1_denominator(&k, &V2::new(cplx(1.0, 0.0), z)) - s).abs() < 1e-13);
    assert!((p1_denominator(&k, &V2::new(z, cplx(1.0, 0.0))) - n).abs() < 1e-13);
}

#[test]
fn grid_shape_and_rejections() {
    let prof = Profile::bump(ChartId::HM, &[0.0; 3], 1.0, cplx(1.0, 0.0));
    let g = build_grid(&prof, 4, Measure::Nu { m: 1.0 }).unwrap();
    assert_eq!(g.len(), 64);
    assert!((g.weight_sum() - 8.0).abs() < 1e-13);
    let mut empty = prof.clone();
    empty.radius = 0.0;
    assert!(build_grid(&empty, 4, Measure::Nu { m: 1.0 }).is_err());
    let cone = Profile::bump(ChartId::CPLUS, &[0.0, 0.0, 0.5], 1.0, cplx(1.0, 0.0));
    assert!(matches!(
        build_grid(&cone, 4, Measure::Omega),
        Err(Error::OffDomain(_))
    ));
}

#[test]
fn table_interpolates_corners() {
    let t = Table {
        shape: vec![2, 2, 2],
        values: (0..8).map(|i| cplx(i as f64, 0.0)).collect(),
    };
    let prof = Profile {
        kind: ProfileKind::Table,
        chart: ChartId::HM,
        center: vec![0.0; 3],
        radius: 1.0,
        amplitude: cplx(1.0, 0.0),
        table: Some(t),
    };
    assert_eq!(prof.eval(&[1.0, 1.0, 1.0]), cplx(7.0, 0.0));
    assert_eq!(prof.eval(&[0.0, 0.0, 0.0]), cplx(3.5, 0.0));
    assert_eq!(prof.eval(&[1.5, 0.0, 0.0]), cplx(0.0, 0.0));
}
