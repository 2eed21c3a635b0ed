use gq::massive::*;
use gq::massless::*;
use gq::measure::*;
use gq::rep::*;
use gq::sample;
use gq::section::Trivialization;
use gq::spinor::*;
use std::f64::consts::PI;

fn bump(chart: ChartId, center: &[f64], r: f64, amp: C64) -> Profile {
    Profile::bump(chart, center, r, amp)
}

struct Case {
    f: RepFunction,
    f2: RepFunction,
    profile: Profile,
}

fn cases() -> Vec<Case> {
    let mut v = vec![];
    for eta in [-1.0, 1.0] {
        let p = bump(ChartId::HM, &[0.3, -0.2, 0.1], 0.8, cplx(1.0, 0.3));
        let q = bump(ChartId::HM, &[0.1, 0.0, 0.2], 0.7, cplx(-0.5, 1.0));
        v.push(Case {
            f: RepFunction::klein_gordon(1.2, eta, p.clone()),
            f2: RepFunction::klein_gordon(1.2, eta, q),
            profile: p,
        });
        let spec = MassiveSpec::new(1.5, eta, 1).unwrap();
        let p = bump(
            ChartId::HM_P1_S,
            &[0.2, 0.0, 0.1, 0.3, -0.2],
            0.7,
            cplx(1.0, 0.0),
        );
        let q = bump(
            ChartId::HM_P1_S,
            &[0.1, 0.1, 0.0, 0.2, 0.0],
            0.6,
            cplx(0.2, 0.9),
        );
        v.push(Case {
            f: RepFunction::from_section(&massive_section(&spec, &p)),
            f2: RepFunction::from_section(&massive_section(&spec, &q)),
            profile: p,
        });
        for chi in [-1.0, 1.0] {
            for t in [1, 2] {
                let spec = MasslessSpec::new(eta, chi, t).unwrap();
                let p = bump(ChartId::CPLUS, &[0.2, 0.3, 1.0], 0.6, cplx(1.0, -0.4));
                let q = bump(ChartId::CPLUS, &[0.1, 0.3, 0.9], 0.5, cplx(0.3, 0.3));
                v.push(Case {
                    f: RepFunction::from_section(&massless_section(&spec, &p)),
                    f2: RepFunction::from_section(&massless_section(&spec, &q)),
                    profile: p,
                });
            }
        }
    }
    v
}

/// Points over base points near the profile centre.
fn points(c: &Case, r: &mut sample::SampleRng, n: usize) -> Vec<Vec<C64>> {
    (0..n)
        .map(|_| {
            let x: Vec<f64> = c
                .profile
                .center
                .iter()
                .map(|v| v + 0.3 * c.profile.radius * sample::uniform(r, -1.0, 1.0))
                .collect();
            let pt = ChartPoint::from_coords(c.profile.chart, &x).unwrap();
            let p = c.f.carrier.point_of(&pt).unwrap();
            let phase = cplx(0.0, sample::uniform(r, -PI, PI)).exp();
            match c.f.carrier {
                Carrier::KleinGordon { .. } => p,
                Carrier::Spinor { .. } => p.iter().map(|z| z * phase).collect(),
            }
        })
        .collect()
}

#[test]
fn delta_prime_is_a_homomorphism() {
    let mut r = sample::rng(1);
    for c in cases() {
        let mut worst: f64 = 0.0;
        let mut scale: f64 = 0.0;
        for p in points(&c, &mut r, 50) {
            let (g1, g2) = (sample::group(&mut r, 0.15), sample::group(&mut r, 0.15));
            let lhs = rep_on_f(&g1, &rep_on_f(&g2, &c.f)).eval(&p).unwrap();
            let rhs = rep_on_f(&g1.mul(&g2), &c.f).eval(&p).unwrap();
            worst = worst.max((lhs - rhs).norm());
            scale = scale.max(rhs.norm());
            assert_eq!(
                rep_on_f(&GroupElem::identity(), &c.f).eval(&p).unwrap(),
                c.f.eval(&p).unwrap()
            );
        }
        assert!(
            scale > 0.0 && worst <= 1e-12 * scale,
            "{:?} {worst:e}",
            c.f.carrier
        );
    }
}

#[test]
fn prewave_routes_agree() {
    let mut r = sample::rng(2);
    for c in cases() {
        for p in points(&c, &mut r, 30) {
            let g = sample::group(&mut r, 0.15);
            let h = sample::herm(&mut r, 1.0);
            let a = rep_on_prewave(&g, &c.f, &h, &p).unwrap();
            let b = rep_on_prewave_via_f(&g, &c.f, &h, &p).unwrap();
            let s = max_abs_v(&b).max(1e-300);
            assert!(
                max_abs_v(&a.iter().zip(&b).map(|(x, y)| x - y).collect::<Vec<_>>())
                    <= 1e-12 * s.max(1.0),
                "{:?}",
                c.f.carrier
            );
            // A pure translation multiplies by the phase exp(−iπ Tr(P ε H̄₀ ε)).
            let h0 = sample::herm(&mut r, 1.0);
            let t = rep_on_prewave(&GroupElem::translation(h0), &c.f, &h, &p).unwrap();
            let k = c.f.carrier.momentum(&p).unwrap();
            let phase = gq::section::plane_phase(-c.f.carrier.eta(), &k, &h0);
            let base = c.f.prewave(&h, &p).unwrap();
            for (x, y) in t.iter().zip(&base) {
                assert!((x - y * phase).norm() <= 1e-12 * (1.0 + y.norm()));
            }
        }
    }
}

#[test]
fn delta_prime_is_unitary() {
    let mut r = sample::rng(3);
    for c in cases()
        .into_iter()
        .filter(|c| !matches!(c.f.carrier, Carrier::Spinor { degree: 2, .. }))
    {
        let order = if c.profile.chart == ChartId::HM_P1_S {
            8
        } else {
            14
        };
        let grid = build_grid(&c.profile, order, c.f.carrier.measure()).unwrap();
        let base = inner(&c.f, &c.f2, &grid).unwrap();
        for _ in 0..3 {
            let g = sample::group(&mut r, 0.05);
            let sub = inner_transformed(&g, &c.f, &c.f2, &grid).unwrap();
            assert!(
                (sub - base).norm() <= 1e-8 * base.norm(),
                "{:?} {sub} {base}",
                c.f.carrier
            );
        }
        let g = sample::group(&mut r, 0.02);
        let direct = inner_transformed_direct(&g, &c.f, &c.f, &grid).unwrap();
        let norm = inner(&c.f, &c.f, &grid).unwrap();
        assert!(
            (direct - norm).norm() <= 0.05 * norm.norm(),
            "{:?} {direct} {norm}",
            c.f.carrier
        );
    }
}

#[test]
fn quantum_operator_is_the_scaled_generator() {
    let mut r = sample::rng(4);
    for c in cases()
        .into_iter()
        .filter(|c| c.profile.chart == ChartId::CPLUS)
    {
        for p in points(&c, &mut r, 10) {
            let x = sample::alg(&mut r, 1.0);
            let a = quantum_operator_f(&x, &c.f, &p).unwrap();
            let b = generator_on_f_fd(&x, &c.f, &p).unwrap();
            assert!((a - b).norm() <= 1e-6 * (1.0 + b.norm()), "{a} {b}");
        }
    }
    // (P^k)^θ f = (P^k ∘ r) f.
    let c = &cases()[2];
    for p in points(c, &mut r, 5) {
        let k = c.f.carrier.momentum(&p).unwrap().four();
        for i in 1..=4 {
            let a = quantum_operator_f(&AlgElem::p(i), &c.f, &p).unwrap();
            let want = c.f.eval(&p).unwrap() * (-c.f.carrier.eta() * k.0[i - 1]);
            assert!((a - want).norm() <= 1e-12 * (1.0 + want.norm()));
        }
    }
}

fn poly(z: &[C64]) -> Result<C64, gq::Error> {
    let s: C64 = z
        .iter()
        .enumerate()
        .map(|(i, v)| v * v.conj() * (i as f64 + 1.0) + v * cplx(0.3, i as f64))
        .sum();
    Ok(s * z[0] + (z[1] * 0.5).exp())
}

#[test]
fn vector_fields_match_curves_and_brackets() {
    let mut r = sample::rng(5);
    let trivs = [
        Trivialization::massive(1.0, 1.0),
        Trivialization::massless(1.0, 1.0),
        Trivialization::massless(-1.0, -1.0),
    ];
    for triv in trivs {
        let d = triv.dim();
        for _ in 0..20 {
            let p: Vec<C64> = (0..d).map(|_| sample::cnormal(&mut r) * 0.5).collect();
            let a = sample::traceless(&mut r, 1.0);
            let b = sample::traceless(&mut r, 1.0);
            let x = infinitesimal_x(&a, &triv, poly, &p).unwrap();
            let y = curve_derivative(&a, &triv, poly, &p).unwrap();
            assert!((x - y).norm() <= 1e-7 * (1.0 + y.norm()), "{x} {y}");
            assert_eq!(
                infinitesimal_x(&M2::zeros(), &triv, poly, &p).unwrap(),
                cplx(0.0, 0.0)
            );
            let xb = |q: &[C64]| infinitesimal_x(&b, &triv, poly, q);
            let xa = |q: &[C64]| infinitesimal_x(&a, &triv, poly, q);
            let lhs = infinitesimal_x(&a, &triv, xb, &p).unwrap()
                - infinitesimal_x(&b, &triv, xa, &p).unwrap();
            let rhs = infinitesimal_x(&(a * b - b * a), &triv, poly, &p).unwrap();
            assert!(
                (lhs - rhs).norm() <= 1e-6 * (1.0 + rhs.norm()),
                "{lhs} {rhs}"
            );
        }
    }
}

fn sampled(
    c: &Case,
    order: usize,
    n: usize,
    step: f64,
) -> (gq::synth::PlaneWaveSum, SampledField, QuadratureGrid) {
    let grid = build_grid(&c.profile, order, c.f.carrier.measure()).unwrap();
    let sum = wave_synth(&c.f, &grid).unwrap();
    let half = step * (n as f64 - 1.0) / 2.0;
    let origin = FourVector::new(0.1 - half, -0.2 - half, 0.05 - half, 0.3 - half);
    let field = SampledField::sample(origin, step, [n; 4], sum.dim, |x| sum.eval(x)).unwrap();
    (sum, field, grid)
}

#[test]
fn momentum_operator_two_routes() {
    for c in cases()
        .into_iter()
        .filter(|c| !matches!(c.f.carrier, Carrier::Spinor { degree: 2, .. }))
    {
        let order = if c.profile.chart == ChartId::HM_P1_S {
            6
        } else {
            16
        };
        let (_, field, grid) = sampled(&c, order, 5, 5e-3);
        for k in 1..=4 {
            let op = wave_operator(&AlgElem::p(k), &c.f.carrier, &field).unwrap();
            let mult = momentum_weighted_wave(k, &c.f, &grid).unwrap();
            let want =
                SampledField::sample(op.origin, op.step, op.n, op.dim, |x| mult.eval(x)).unwrap();
            let rel = relative_difference(&want, &op).unwrap();
            assert!(rel <= 1e-5, "{:?} P{k}: {rel:e}", c.f.carrier);
        }
    }
}

#[test]
fn angular_and_boost_operators() {
    let all = cases();
    for c in [&all[0], &all[3], &all[4]] {
        let (sum, field, _) = sampled(c, 12, 9, 5e-3);
        let carrier = c.f.carrier;
        for k in 1..=3 {
            let op = wave_operator(&AlgElem::l(k), &carrier, &field).unwrap();
            let bo = wave_operator(&AlgElem::g(k), &carrier, &field).unwrap();
            // Explicit forms: (1/2πi)(dρ(iσₖ/2) + ε_kjr xʲ∂ᵣ) and (1/2πi)(dρ(σₖ/2) − (x⁴∂ₖ + xᵏ∂₄)).
            for idx in [[2, 2, 2, 2], [4, 3, 2, 4], [2, 4, 4, 2]] {
                let node = [idx[0] + 2, idx[1] + 2, idx[2] + 2, idx[3] + 2];
                let x = field.position(node);
                let v = field.value(node);
                let d: Vec<Vec<C64>> = (0..4).map(|mu| field.derivative(node, mu)).collect();
                let (j, rr) = ((k % 3), ((k + 1) % 3));
                let mut l = carrier.d_rho_value(&(sigma(k) * (IU * 0.5)), v);
                let mut g = carrier.d_rho_value(&(sigma(k) * cplx(0.5, 0.0)), v);
                for i in 0..l.len() {
                    l[i] += d[rr][i] * x.0[j] - d[j][i] * x.0[rr];
                    g[i] -= d[k - 1][i] * x.0[3] + d[3][i] * x.0[k - 1];
                }
                let s = cplx(0.0, 2.0 * PI);
                for i in 0..l.len() {
                    assert!((op.value(idx)[i] - l[i] / s).norm() <= 1e-10 * (1.0 + l[i].norm()));
                    assert!((bo.value(idx)[i] - g[i] / s).norm() <= 1e-10 * (1.0 + g[i].norm()));
                }
                // Third route: differentiate the group action on the synthesized wave.
                let fd = wave_generator_fd(&AlgElem::l(k), &carrier, |y| sum.eval(y), x).unwrap();
                for i in 0..l.len() {
                    assert!((fd[i] - op.value(idx)[i]).norm() <= 1e-5 * max_abs_v(v).max(1e-3));
                }
            }
        }
        // [l̂¹, l̂²] = (i/2π) l̂³.
        let l1 = wave_operator(&AlgElem::l(1), &carrier, &field).unwrap();
        let l2 = wave_operator(&AlgElem::l(2), &carrier, &field).unwrap();
        let l12 = wave_operator(&AlgElem::l(1), &carrier, &l2).unwrap();
        let l21 = wave_operator(&AlgElem::l(2), &carrier, &l1).unwrap();
        let l3 = wave_operator(&AlgElem::l(3), &carrier, &field).unwrap();
        let mut worst: f64 = 0.0;
        let mut scale: f64 = 0.0;
        for (i, (a, b)) in l12.data.iter().zip(&l21.data).enumerate() {
            let idx = i / l12.dim;
            let comp = i % l12.dim;
            let n = l12.n[0];
            let pos = [
                idx / (n * n * n),
                (idx / (n * n)) % n,
                (idx / n) % n,
                idx % n,
            ];
            let want = l3.value([pos[0] + 2, pos[1] + 2, pos[2] + 2, pos[3] + 2])[comp]
                * cplx(0.0, 1.0 / (2.0 * PI));
            worst = worst.max((a - b - want).norm());
            scale = scale.max(want.norm());
        }
        assert!(worst <= 1e-4 * scale, "{:?} {worst:e} {scale:e}", carrier);
    }
}

#[test]
fn angular_momentum_vanishes_at_origin_for_scalars() {
    let c = RepFunction::klein_gordon(1.0, 1.0, bump(ChartId::HM, &[0.0; 3], 0.6, cplx(1.0, 0.0)));
    let grid = build_grid(
        &bump(ChartId::HM, &[0.0; 3], 0.6, cplx(1.0, 0.0)),
        10,
        Measure::Nu { m: 1.0 },
    )
    .unwrap();
    let sum = wave_synth(&c, &grid).unwrap();
    let field = SampledField::sample(
        FourVector::new(-0.01, -0.01, -0.01, -0.01),
        0.005,
        [5; 4],
        1,
        |x| sum.eval(x),
    )
    .unwrap();
    for k in 1..=3 {
        let op = wave_operator(&AlgElem::l(k), &c.carrier, &field).unwrap();
        assert!(op.value([0; 4])[0].norm() <= 1e-12);
    }
    assert!(wave_operator(
        &AlgElem::p(1),
        &c.carrier,
        &SampledField { n: [4; 4], ..field }
    )
    .is_err());
}
