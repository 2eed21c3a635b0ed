use gq::massless::MasslessSpec;
use gq::sample;
use gq::spinor::*;
use gq::twistor::*;

fn specs() -> Vec<MasslessSpec> {
    let mut v = vec![];
    for eta in [-1.0, 1.0] {
        for chi in [-1.0, 1.0] {
            for t in [1, 2] {
                v.push(MasslessSpec::new(eta, chi, t).unwrap());
            }
        }
    }
    v
}

/// Random twistor with sign Φ = sign ν.
fn twistor(spec: &MasslessSpec, r: &mut sample::SampleRng) -> Twistor {
    loop {
        let z = Twistor::from_components([0; 4].map(|_| sample::cnormal(r)));
        if z.phi() * spec.nu() > 0.05 {
            return z;
        }
    }
}

#[test]
fn phi_is_mu1_invariant_and_mu1_is_a_homomorphism() {
    let mut r = sample::rng(1);
    let e1 = V2::new(cplx(1.0, 0.0), cplx(0.0, 0.0));
    assert_eq!(phi_form(&Twistor::new(e1, e1).unwrap()), 1.0);
    for _ in 0..1000 {
        let z = Twistor::from_components([0; 4].map(|_| sample::cnormal(&mut r)));
        let (g1, g2) = (sample::group(&mut r, 0.7), sample::group(&mut r, 0.7));
        let gz = mu1_act(&g1, &z);
        assert!(
            (gz.phi() - z.phi()).abs() <= 1e-12 * z.max_abs().powi(2).max(gz.max_abs().powi(2))
        );
        let lhs = mu1_act(&g1.mul(&g2), &z);
        let rhs = mu1_act(&g1, &mu1_act(&g2, &z));
        assert!(lhs.sub(&rhs).max_abs() <= 1e-12 * lhs.max_abs());
    }
    assert!(
        mu1_act(&GroupElem::identity(), &Twistor::base(0.3))
            .sub(&Twistor::base(0.3))
            .max_abs()
            == 0.0
    );
}

#[test]
fn standardize_transports_the_base_twistor() {
    let mut r = sample::rng(2);
    for spec in specs() {
        let nu = spec.nu();
        for _ in 0..200 {
            let z = twistor(&spec, &mut r);
            let g = standardize(&spec, &z).unwrap();
            assert!((g.a.determinant() - cplx(1.0, 0.0)).norm() <= 1e-12);
            let img = mu1_act(&g, &Twistor::base(nu));
            let want = z.scale(cplx((2.0 * nu / z.phi()).sqrt(), 0.0));
            assert!(
                img.sub(&want).max_abs() <= 1e-12 * want.max_abs(),
                "{spec:?}"
            );
        }
        let wrong = Twistor::base(-nu);
        assert!(standardize(&spec, &wrong).is_err());
        assert!(pi_map(&spec, &wrong).is_err());
    }
}

#[test]
fn pi_is_scale_invariant_and_equivariant() {
    let mut r = sample::rng(3);
    for spec in specs() {
        for _ in 0..200 {
            let z = twistor(&spec, &mut r);
            let p = pi_map(&spec, &z).unwrap();
            let lam = sample::cnormal(&mut r) + cplx(0.1, 0.0);
            assert!(pi_map(&spec, &z.scale(lam)).unwrap().max_abs_diff(&p) <= 1e-12 * p.norm());
            let g = sample::group(&mut r, 0.7);
            let lhs = pi_map(&spec, &mu1_act(&g, &z)).unwrap();
            let rhs = coadjoint(&g, &p);
            assert!(
                lhs.max_abs_diff(&rhs) <= 1e-10 * rhs.norm().max(1.0),
                "{spec:?}"
            );
        }
    }
}

#[test]
fn dynvars_match_the_coadjoint_path() {
    let mut r = sample::rng(4);
    for spec in specs() {
        let q = Twistor::base(spec.nu());
        let dq = twistor_dynvars(&spec, &q).unwrap();
        // h(P) = −η diag(1, 0).
        assert_eq!(
            dq.p,
            FourVector::new(0.0, 0.0, -0.5 * spec.eta, -0.5 * spec.eta)
        );
        for _ in 0..200 {
            let z = twistor(&spec, &mut r);
            let tv = twistor_dynvars(&spec, &z).unwrap();
            let alpha = pi_map(&spec, &z).unwrap();
            let dv = dyn_vars(&alpha);
            let scale = alpha.norm().max(1.0);
            assert!(tv.p.sub(&dv.p).max_abs() <= 1e-12 * scale);
            for i in 0..3 {
                assert!((tv.l[i] - dv.l[i]).abs() <= 1e-12 * scale);
                assert!((tv.g[i] - dv.g[i]).abs() <= 1e-12 * scale);
            }
            let w = pauli_lubanski(&alpha);
            assert!(w.sub(&tv.w).max_abs() <= 1e-12 * scale, "{spec:?}");
            assert!(w.sub(&dv.p.scale(-spec.eta * spec.nu())).max_abs() <= 1e-12 * scale);
        }
    }
}

#[test]
fn omega0_pairs_generators_with_minus_the_dynamical_variable() {
    let mut r = sample::rng(5);
    for spec in specs() {
        let q = Twistor::base(spec.nu());
        let p4 = AlgElem::p(4);
        let alpha = pi_map(&spec, &q).unwrap();
        assert!((omega0_pair(&spec, &q, &p4) + pairing(&alpha, &p4)).abs() <= 1e-8);
        for _ in 0..100 {
            let z = twistor(&spec, &mut r);
            let x = sample::alg(&mut r, 1.0);
            let y = sample::alg(&mut r, 1.0);
            let alpha = pi_map(&spec, &z).unwrap();
            let fd = omega0_pair(&spec, &z, &x);
            assert!(
                (fd + pairing(&alpha, &x)).abs() <= 1e-8 * (1.0 + fd.abs()),
                "{spec:?}"
            );
            let exact = omega0(&spec, &z, &d_mu1(&x, &z).scale(cplx(-1.0, 0.0)));
            assert!((exact - fd).abs() <= 1e-8 * (1.0 + fd.abs()));
            let sum = omega0(&spec, &z, &d_mu1(&x.add(&y.scale(2.0)), &z));
            let parts = omega0(&spec, &z, &d_mu1(&x, &z)) + 2.0 * omega0(&spec, &z, &d_mu1(&y, &z));
            assert!((sum - parts).abs() <= 1e-12 * (1.0 + sum.abs()));
        }
    }
}

fn kg_points(r: &mut sample::SampleRng, n: usize) -> Vec<Vec<f64>> {
    (0..n)
        .map(|_| {
            let mut p: Vec<f64> = (0..6).map(|_| sample::normal(r)).collect();
            p.push(sample::uniform(r, -0.4, 0.4));
            p
        })
        .collect()
}

#[test]
fn kg_contact_form_and_characteristic_field() {
    let mut r = sample::rng(6);
    for eta in [-1.0, 1.0] {
        for m in [0.5, 1.0, 2.0] {
            let fam = ContactFamily::KleinGordon { m, eta, tau: 0.3 };
            let pts = kg_points(&mut r, 20);
            let rep = contact_pullback_check(&fam, &pts).unwrap();
            assert!(rep.max_abs <= 1e-6, "{rep:?}");
            let theta = fam.closed_form(&pts[0]).unwrap();
            let d = exterior_derivative(|s| fam.closed_form(s), &pts[0], EXTERIOR_STEP).unwrap();
            assert_eq!(theta[6], 1.0);
            assert!(d[6].iter().all(|c| c.abs() <= 1e-9));
        }
    }
    let fam = ContactFamily::KleinGordon {
        m: 1.0,
        eta: 1.0,
        tau: 0.0,
    };
    let mut off = kg_points(&mut r, 1).remove(0);
    off[6] = 0.7;
    assert!(fam.pullback(&off).is_err());
}

#[test]
fn kg_volume_coefficient_is_minus_six_eta_m_cubed() {
    // Ω = dt + ηm kᵢdxⁱ gives Ω∧(dΩ)³ = −6ηm³ dt∧dk∧dx in (t, k₁, k₂, k₃, x¹, x², x³) order.
    let mut r = sample::rng(7);
    for eta in [-1.0, 1.0] {
        for m in [0.5, 1.5] {
            for p in kg_points(&mut r, 3) {
                let v = kg_volume_coefficient(m, eta, &p).unwrap();
                assert!((v + 6.0 * eta * m.powi(3)).abs() <= 1e-6 * m.powi(3), "{v}");
            }
        }
    }
}

#[test]
fn dirac_contact_form() {
    let mut r = sample::rng(8);
    for eta in [-1.0, 1.0] {
        for t in [1, 2] {
            let fam = ContactFamily::Dirac { m: 1.3, eta, t };
            let pts: Vec<Vec<f64>> = (0..20)
                .map(|_| {
                    (0..9)
                        .map(|i| {
                            if i < 4 {
                                0.5 + 0.5 * sample::normal(&mut r)
                            } else {
                                sample::normal(&mut r)
                            }
                        })
                        .collect()
                })
                .collect();
            let rep = contact_pullback_check(&fam, &pts).unwrap();
            assert!(rep.max_abs <= 1e-6, "{rep:?}");
        }
    }
}

fn chart_point(spec: &MasslessSpec, r: &mut sample::SampleRng) -> Vec<f64> {
    loop {
        let p: Vec<f64> = (0..6).map(|_| 0.7 * sample::normal(r)).collect();
        let re_phi = p[2] + p[0] * p[4] + p[1] * p[5];
        if re_phi * spec.nu() > 0.1 {
            return p;
        }
    }
}

#[test]
fn local_primitive_matches_pullback_of_omega0() {
    let mut r = sample::rng(9);
    for spec in specs() {
        for k in 1..=4 {
            for _ in 0..20 {
                let p = chart_point(&spec, &mut r);
                let num = primitive_pullback(&spec, k, &p).unwrap();
                let closed = local_primitive(&spec, &p).unwrap();
                let err = num
                    .iter()
                    .zip(&closed)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max);
                assert!(err <= 1e-8, "chart {k} {spec:?} {num:?} {closed:?}");
            }
        }
    }
}

#[test]
fn local_symplectic_form() {
    let mut r = sample::rng(10);
    for spec in specs() {
        let (eta, nu) = (spec.eta, spec.nu());
        // At t = v = 0, u = 2ν: Ω = −(η/4ν)du_r∧duᵢ + η dt_r∧dvᵢ − η dtᵢ∧dv_r.
        let o = local_symplectic(&spec, &[0.0, 0.0, 2.0 * nu, 0.0, 0.0, 0.0]).unwrap();
        let mut want = vec![vec![0.0; 6]; 6];
        let mut set = |i: usize, j: usize, v: f64| {
            want[i][j] = v;
            want[j][i] = -v;
        };
        set(2, 3, -eta / (4.0 * nu));
        set(0, 5, eta);
        set(1, 4, -eta);
        for i in 0..6 {
            for j in 0..6 {
                assert!((o[i][j] - want[i][j]).abs() <= 1e-8, "{spec:?} {i} {j}");
            }
        }
        for _ in 0..10 {
            let p = chart_point(&spec, &mut r);
            let closed = local_symplectic(&spec, &p).unwrap();
            assert!(two_form_nondegeneracy(&closed) > 1e-6);
            let d = closedness_residual(|s| local_symplectic(&spec, s), &p, 1e-3).unwrap();
            assert!(d <= 1e-6, "{d}");
            for k in 1..=4 {
                let direct = symplectic_pullback(&spec, k, &p).unwrap();
                for i in 0..6 {
                    for j in 0..6 {
                        assert!(
                            (closed[i][j] - direct[i][j]).abs() <= 1e-6,
                            "{spec:?} chart {k}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn symplectic_form_agrees_on_chart_overlaps() {
    let mut r = sample::rng(11);
    for spec in specs() {
        for _ in 0..10 {
            let p = chart_point(&spec, &mut r);
            for to in 2..=4 {
                let res = chart_overlap_residual(&spec, 1, to, &p).unwrap();
                assert!(res <= 1e-8, "{spec:?} 1→{to}: {res}");
            }
        }
    }
}

#[test]
fn wedge_of_basis_forms() {
    let x = Form::from_one_form(&[1.0, 0.0]);
    let y = Form::from_one_form(&[0.0, 1.0]);
    assert_eq!(x.wedge(&y).top(), 1.0);
    assert_eq!(y.wedge(&x).top(), -1.0);
    assert_eq!(x.wedge(&x).top(), 0.0);
}

#[test]
fn base_twistor_maps_to_alpha() {
    for (eta, chi) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
        let spec = MasslessSpec::new(eta, chi, 2).unwrap();
        let q = Twistor::base(spec.nu());
        assert!((phi_form(&q) - 2.0 * spec.nu()).abs() < 1e-15);
        assert!(pi_map(&spec, &q).unwrap().max_abs_diff(&spec.alpha()) < 1e-15);
    }
}

#[test]
fn darboux_form_has_expected_volume() {
    // θ = dt + x dy on (t, x, y): θ∧dθ = dt∧dx∧dy.
    let theta = [1.0, 0.0, 0.5];
    let d = vec![
        vec![0.0, 0.0, 0.0],
        vec![0.0, 0.0, 1.0],
        vec![0.0, -1.0, 0.0],
    ];
    assert!((contact_volume(&theta, &d) - 1.0).abs() < 1e-15);
}
