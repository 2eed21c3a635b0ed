//! Verification suites: each one runs the checks of one acceptance
//! criterion at its stated tolerances and reports every measured value.

use crate::error::{Error, Result};
use crate::massive::*;
use crate::massless::*;
use crate::measure::*;
use crate::orbit::*;
use crate::photon::*;
use crate::rep::*;
use crate::sample::{self, SampleRng};
use crate::spinor::*;
use crate::twistor::*;
use crate::verify::*;
use serde::Serialize;
use std::f64::consts::PI;
use std::time::Instant;

/// One measured quantity against its bound.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub tol: f64,
    pub pass: bool,
}

impl Check {
    /// Passes when `value ≤ tol` (a NaN never passes).
    pub fn at_most(name: impl Into<String>, value: f64, tol: f64) -> Check {
        Check {
            name: name.into(),
            value,
            tol,
            pass: value <= tol,
        }
    }

    /// Passes when `value > tol`.
    pub fn above(name: impl Into<String>, value: f64, tol: f64) -> Check {
        Check {
            name: name.into(),
            value,
            tol,
            pass: value > tol,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub criterion: u8,
    pub pass: bool,
    pub seconds: f64,
    pub checks: Vec<Check>,
}

/// Suite tags with their criterion numbers, in criterion order.
pub const SUITES: [(&str, u8); 12] = [
    ("orbits", 1),
    ("coadjoint", 2),
    ("exp", 3),
    ("kg", 4),
    ("dirac", 5),
    ("massless", 6),
    ("helicity", 7),
    ("measure", 8),
    ("photon-gauge", 9),
    ("twistor", 10),
    ("contact", 11),
    ("rep", 12),
];

pub fn criterion_of(tag: &str) -> Option<u8> {
    SUITES.iter().find(|(t, _)| *t == tag).map(|(_, c)| *c)
}

/// Runs the suite named `tag`.
pub fn run(tag: &str, seed: u64) -> Result<SuiteReport> {
    let criterion =
        criterion_of(tag).ok_or_else(|| Error::Invalid(format!("unknown suite {tag:?}")))?;
    let start = Instant::now();
    let mut r = sample::rng(seed);
    let checks = match criterion {
        1 => orbits()?,
        2 => coadjoint_drift(&mut r)?,
        3 => exp_oracle(&mut r)?,
        4 => kg()?,
        5 => dirac(&mut r)?,
        6 => massless(&mut r)?,
        7 => helicity(&mut r)?,
        8 => measure(&mut r)?,
        9 => photon(&mut r)?,
        10 => twistor(&mut r)?,
        11 => contact(&mut r)?,
        _ => representation(&mut r)?,
    };
    Ok(SuiteReport {
        suite: tag.to_string(),
        criterion,
        pass: checks.iter().all(|c| c.pass),
        seconds: start.elapsed().as_secs_f64(),
        checks,
    })
}

fn signs() -> [(f64, f64); 4] {
    [(-1.0, -1.0), (-1.0, 1.0), (1.0, -1.0), (1.0, 1.0)]
}

fn orbits() -> Result<Vec<Check>> {
    let mut rows = 0;
    let mut wrong = 0;
    for id in 1..=9u8 {
        for (eta, chi) in signs() {
            for t in 1..=3u32 {
                for m in [0.5, 1.0, 2.0] {
                    let row = row_type(id, m, eta, chi, t);
                    let rep = canonical_rep(&row)?;
                    let got = classify(&rep.alpha, DEFAULT_TOL)?;
                    rows += 1;
                    if got.type_id != id {
                        wrong += 1;
                    }
                }
            }
        }
    }
    Ok(vec![
        Check::at_most("misclassified canonical representatives", wrong as f64, 0.0),
        Check::above("rows checked", rows as f64, 0.0),
    ])
}

/// Drift of an invariant relative to its size (absolute when it vanishes).
fn drift(before: f64, after: f64) -> f64 {
    let d = (after - before).abs();
    if before == 0.0 {
        d
    } else {
        d / before.abs()
    }
}

fn coadjoint_drift(r: &mut SampleRng) -> Result<Vec<Check>> {
    let (mut dp, mut dw, mut changed) = (0.0f64, 0.0f64, 0);
    for id in 1..=9u8 {
        let alpha = canonical_rep(&row_type(id, 1.0, 1.0, 1.0, 1))?.alpha;
        let (p2, w2) = orbit_invariants(&alpha);
        for _ in 0..1000 {
            let moved = coadjoint(&sample::group(r, 0.5), &alpha);
            let (q2, v2) = orbit_invariants(&moved);
            dp = dp.max(drift(p2, q2));
            dw = dw.max(drift(w2, v2));
            if classify(&moved, DEFAULT_TOL).map(|t| t.type_id) != Ok(id) {
                changed += 1;
            }
        }
    }
    Ok(vec![
        Check::at_most("|P| relative drift", dp, 1e-9),
        Check::at_most("|W| relative drift", dw, 1e-9),
        Check::at_most("type changes under transport", changed as f64, 0.0),
    ])
}

/// Integrates the left-invariant flow ġ = g·X from the identity with
/// classical RK4: (Ȧ, Ḣ) = (A a, A h A*).
pub fn rk4_flow(x: &AlgElem, t: f64, steps: usize) -> (M2, M2) {
    let f = |a: &M2, _h: &M2| (a * x.a, a * *x.h * a.adjoint());
    let dt = t / steps as f64;
    let (mut a, mut h) = (id2(), M2::zeros());
    for _ in 0..steps {
        let (k1a, k1h) = f(&a, &h);
        let (k2a, k2h) = f(
            &(a + k1a * cplx(dt / 2.0, 0.0)),
            &(h + k1h * cplx(dt / 2.0, 0.0)),
        );
        let (k3a, k3h) = f(
            &(a + k2a * cplx(dt / 2.0, 0.0)),
            &(h + k2h * cplx(dt / 2.0, 0.0)),
        );
        let (k4a, k4h) = f(&(a + k3a * cplx(dt, 0.0)), &(h + k3h * cplx(dt, 0.0)));
        a += (k1a + k2a * cplx(2.0, 0.0) + k3a * cplx(2.0, 0.0) + k4a) * cplx(dt / 6.0, 0.0);
        h += (k1h + k2h * cplx(2.0, 0.0) + k3h * cplx(2.0, 0.0) + k4h) * cplx(dt / 6.0, 0.0);
    }
    (a, h)
}

fn exp_oracle(r: &mut SampleRng) -> Result<Vec<Check>> {
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let x = sample::alg(r, 1.0);
        let t = sample::uniform(r, -2.0, 2.0);
        let g = alg_exp(&x, t);
        let (a, h) = rk4_flow(&x, t, 4000);
        let scale = max_abs(&g.a).max(max_abs(&g.h)).max(1.0);
        worst = worst.max(max_abs(&(*g.a - a)).max(max_abs(&(*g.h - h))) / scale);
    }
    Ok(vec![Check::at_most("alg_exp vs RK4 flow", worst, 1e-8)])
}

fn bump(chart: ChartId, center: &[f64], r: f64) -> Profile {
    Profile::bump(chart, center, r, cplx(1.0, 0.0))
}

fn kg() -> Result<Vec<Check>> {
    let mut out = vec![];
    let pts = spatial_grid(6, -0.5, 0.5, 0.2);
    for eta in [-1.0, 1.0] {
        let spec = MassiveSpec::new(1.0, eta, 0)?;
        let f = bump(ChartId::HM, &[0.3, -0.2, 0.1], 0.8);
        let grid = build_grid(&f, 32, Measure::Nu { m: 1.0 })?;
        let sum = kg_synth(&spec, &f, &grid)?;
        let a = kg_residual(1.0, &Source::Synth(&sum), &pts)?;
        out.push(Check::at_most(
            format!("analytic residual, eta={eta}"),
            a.max_rel,
            1e-10,
        ));
        let field = |x: FourVector| sum.eval(x);
        let fd = kg_residual(
            1.0,
            &Source::Field {
                field: &field,
                step: 1e-3,
            },
            &pts,
        )?;
        out.push(Check::at_most(
            format!("finite-difference residual, eta={eta}"),
            fd.max_rel,
            1e-4,
        ));
    }
    Ok(out)
}

fn near(r: &mut SampleRng, p: &Profile, frac: f64) -> Result<ChartPoint> {
    let c: Vec<f64> = p
        .center
        .iter()
        .map(|c| c + frac * p.radius * sample::uniform(r, -1.0, 1.0))
        .collect();
    ChartPoint::from_coords(p.chart, &c)
}

fn dirac(r: &mut SampleRng) -> Result<Vec<Check>> {
    let mut out = vec![];
    let m = 1.5;
    let pts: Vec<FourVector> = (0..10).map(|_| sample::four(r, 0.6)).collect();
    for eta in [-1.0, 1.0] {
        let spec = MassiveSpec::new(m, eta, 1)?;
        let prof = bump(ChartId::HM_P1_S, &[0.2, 0.0, 0.1, 0.3, -0.2], 0.7);
        let f = massive_section(&spec, &prof);
        let mut jets = vec![];
        for _ in 0..500 {
            let pt = near(r, &prof, 0.3)?;
            let k = pt.momentum(m);
            let a = ProjSpinor::new(pt.spinor().ok_or(Error::MissingParameter("spinor"))?)?;
            let h = sample::herm(r, 1.0);
            jets.push(Jet::plane(
                eta,
                &k.four(),
                dirac_prewave(&spec, &f, &h, &k, &a)?,
            ));
        }
        let rep = residual_from_jets(
            &Equation::Dirac { m, eta },
            &jets,
            Method::AnalyticUnderIntegral,
        )?;
        out.push(Check::at_most(
            format!("pointwise prewave, eta={eta}"),
            rep.max_rel,
            1e-12,
        ));
        let grid = build_grid(&prof, 8, Measure::Mu { m })?;
        let sum = dirac_synth(&f, &grid)?;
        let field = |x: FourVector| sum.eval(x);
        let rep = dirac_residual(
            m,
            eta,
            &Source::Field {
                field: &field,
                step: 1e-3,
            },
            &pts,
        )?;
        out.push(Check::at_most(
            format!("integrated finite-difference, eta={eta}"),
            rep.max_rel,
            1e-6,
        ));
    }
    Ok(out)
}

fn cone_point(r: &mut SampleRng) -> Herm2 {
    let p = [
        0.2 + 0.3 * sample::normal(r),
        0.3,
        1.0 + 0.2 * sample::normal(r),
    ];
    ChartPoint::Cplus(p).momentum(0.0)
}

fn massless(r: &mut SampleRng) -> Result<Vec<Check>> {
    let mut out = vec![];
    let pts: Vec<FourVector> = (0..8).map(|_| sample::four(r, 0.6)).collect();
    for (eta, chi) in signs() {
        for t in 1..=3u32 {
            let spec = MasslessSpec::new(eta, chi, t)?;
            let prof = bump(ChartId::CPLUS, &[0.2, 0.3, 1.0], 0.6);
            let f = massless_section(&spec, &prof);
            let mut jets = vec![];
            for _ in 0..100 {
                let k = cone_point(r);
                let h = sample::herm(r, 1.0);
                jets.push(Jet::plane(
                    eta,
                    &k.four(),
                    penrose_prewave(&spec, &f, &k, &h)?,
                ));
            }
            let grid = build_grid(&prof, 12, Measure::Omega)?;
            let sum = penrose_synth(&spec, &f, &grid)?;
            let field = |x: FourVector| sum.eval(x);
            let src = Source::Field {
                field: &field,
                step: 1e-3,
            };
            let tag = format!("eta={eta} chi={chi} T={t}");
            let eqs = if t == 1 {
                vec![("weyl", Equation::Weyl { chi })]
            } else {
                vec![("penrose", Equation::Penrose { chi, t })]
            };
            for (name, eq) in eqs {
                let p = residual_from_jets(&eq, &jets, Method::AnalyticUnderIntegral)?;
                out.push(Check::at_most(
                    format!("{name} pointwise, {tag}"),
                    p.max_rel,
                    1e-12,
                ));
                let i = residual(&eq, &src, &pts)?;
                out.push(Check::at_most(
                    format!("{name} integrated, {tag}"),
                    i.max_rel,
                    1e-6,
                ));
            }
        }
    }
    Ok(out)
}

fn helicity(r: &mut SampleRng) -> Result<Vec<Check>> {
    let mut out = vec![];
    for (eta, chi) in signs() {
        for t in [1u32, 2] {
            let spec = MasslessSpec::new(eta, chi, t)?;
            let lambda = -eta * chi * t as f64 / (4.0 * PI);
            let f = massless_section(&spec, &bump(ChartId::CPLUS, &[0.2, 0.3, 1.0], 0.6));
            let mut worst: f64 = 0.0;
            for _ in 0..200 {
                let k = cone_point(r);
                let h = sample::herm(r, 1.0);
                let psi = penrose_prewave(&spec, &f, &k, &h)?;
                let scale = max_abs_v(&psi);
                if scale == 0.0 {
                    continue;
                }
                let hp = helicity_apply(&spec, &psi, &k)?;
                let err = hp
                    .iter()
                    .zip(&psi)
                    .map(|(a, b)| (a - b * lambda).norm())
                    .fold(0.0, f64::max);
                worst = worst.max(err / scale);
            }
            out.push(Check::at_most(
                format!("eigen-residual, eta={eta} chi={chi} T={t}"),
                worst,
                1e-12,
            ));
        }
    }
    Ok(out)
}

fn measure(r: &mut SampleRng) -> Result<Vec<Check>> {
    let cases = [
        (
            bump(ChartId::HM, &[0.3, -0.2, 0.1], 0.8),
            Measure::Nu { m: 1.2 },
            32,
            "nu",
        ),
        (
            bump(ChartId::CPLUS, &[0.2, 0.3, 1.0], 0.6),
            Measure::Omega,
            32,
            "omega",
        ),
        (
            bump(ChartId::HM_P1_S, &[0.2, 0.0, 0.1, 0.3, -0.2], 0.7),
            Measure::Mu { m: 1.0 },
            16,
            "mu",
        ),
    ];
    let mut out = vec![];
    for (prof, meas, order, name) in cases {
        let grid = build_grid(&prof, order, meas)?;
        let f = |pt: &ChartPoint| prof.eval_point(pt);
        let base = integrate(f, &grid)?;
        let mut worst: f64 = 0.0;
        for _ in 0..20 {
            let a = sample::sl2(r, 0.05);
            let moved = integrate_composed(f, &a, &grid)?;
            worst = worst.max((moved - base).norm() / base.norm());
        }
        out.push(Check::at_most(format!("{name} invariance"), worst, 1e-6));
    }
    Ok(out)
}

/// The photon field used by the gauge suite.
pub fn demo_photon_field() -> Result<ConeVectorField> {
    let centers = [
        [0.2, 0.3, 1.0],
        [0.3, 0.1, 0.9],
        [0.1, 0.3, 1.1],
        [0.2, 0.2, 1.0],
    ];
    let amp = [
        cplx(1.0, 0.5),
        cplx(-0.3, 0.8),
        cplx(0.6, -0.2),
        cplx(0.0, 0.0),
    ];
    ConeVectorField::from_profiles(
        [0, 1, 2, 3].map(|i| Profile::bump(ChartId::CPLUS, &centers[i], 0.5, amp[i])),
    )
}

fn photon(r: &mut SampleRng) -> Result<Vec<Check>> {
    let a = demo_photon_field()?;
    let shifted = a.gauge_shift(|k| {
        M2::new(
            cplx(k.trace(), 1.0),
            cplx(0.2, 0.0),
            cplx(0.0, -0.4),
            cplx(1.5, 0.0),
        )
    });
    let (mut gauge, mut em): (f64, f64) = (0.0, 0.0);
    for _ in 0..200 {
        let k = cone_point(r);
        let s = sym_fiber(&k, 1.0)?.scale(cplx(0.0, sample::uniform(r, 0.0, 2.0 * PI)).exp());
        let f0 = f_from_field(&a, &s)?;
        gauge = gauge.max((f0 - f_from_field(&shifted, &s)?).norm() / (1.0 + f0.norm()));
        em = em.max(em_identity_check(&a, &k)?);
    }
    let grid = a.grid(16)?;
    let xs: Vec<FourVector> = (0..5).map(|_| sample::four(r, 0.8)).collect();
    let mut field_form: f64 = 0.0;
    for (eta, chi) in signs() {
        let spec = PhotonSpec::new(eta, chi)?;
        for x in &xs {
            let w = photon_wave(&spec, &a, *x, &grid)?;
            let c = photon_wave_from_em(&spec, &a, *x, &grid)?;
            field_form = field_form.max(max_abs(&(w - c)) / max_abs(&w));
        }
    }
    let mut lorenz: f64 = 0.0;
    for eta in [-1.0, 1.0] {
        let pot = potential_synth(eta, &a, &grid)?;
        lorenz = lorenz.max(lorenz_gauge_residual(&Source::Synth(&pot), &xs)?.max_rel);
    }
    Ok(vec![
        Check::at_most("(a) gauge invariance of f", gauge, 1e-12),
        Check::at_most("(b) EM identity", em, 1e-13),
        Check::at_most("(c) field form vs quadrature", field_form, 1e-6),
        Check::at_most("(d) Lorenz gauge, analytic", lorenz, 1e-10),
    ])
}

fn random_twistor(spec: &MasslessSpec, r: &mut SampleRng) -> Twistor {
    loop {
        let z = Twistor::from_components([0; 4].map(|_| sample::cnormal(r)));
        if z.phi() * spec.nu() > 0.05 {
            return z;
        }
    }
}

fn twistor(r: &mut SampleRng) -> Result<Vec<Check>> {
    let (mut equi, mut dyn_err, mut w_err, mut pair): (f64, f64, f64, f64) = (0.0, 0.0, 0.0, 0.0);
    for (eta, chi) in signs() {
        for t in [1u32, 2] {
            let spec = MasslessSpec::new(eta, chi, t)?;
            for _ in 0..200 {
                let z = random_twistor(&spec, r);
                let g = sample::group(r, 0.7);
                let alpha = pi_map(&spec, &z)?;
                let moved = pi_map(&spec, &mu1_act(&g, &z))?;
                let want = coadjoint(&g, &alpha);
                equi = equi.max(moved.max_abs_diff(&want) / want.norm().max(1.0));
                let tv = twistor_dynvars(&spec, &z)?;
                let dv = dyn_vars(&alpha);
                let scale = alpha.norm().max(1.0);
                let mut e = tv.p.sub(&dv.p).max_abs();
                for i in 0..3 {
                    e = e
                        .max((tv.l[i] - dv.l[i]).abs())
                        .max((tv.g[i] - dv.g[i]).abs());
                }
                dyn_err = dyn_err.max(e / scale);
                let w = pauli_lubanski(&alpha);
                w_err = w_err.max(
                    w.sub(&dv.p.scale(-eta * spec.nu()))
                        .max_abs()
                        .max(w.sub(&tv.w).max_abs())
                        / scale,
                );
                let x = sample::alg(r, 1.0);
                let fd = omega0_pair(&spec, &z, &x);
                pair = pair.max((fd + pairing(&alpha, &x)).abs() / (1.0 + fd.abs()));
            }
        }
    }
    Ok(vec![
        Check::at_most("Pi equivariance", equi, 1e-10),
        Check::at_most("dynamical variables vs coadjoint path", dyn_err, 1e-12),
        Check::at_most("W = -eta nu P", w_err, 1e-12),
        Check::at_most("omega0 pairing identity (FD)", pair, 1e-8),
    ])
}

fn contact(r: &mut SampleRng) -> Result<Vec<Check>> {
    let mut out = vec![];
    let kg_point = |r: &mut SampleRng| {
        let mut p: Vec<f64> = (0..6).map(|_| sample::normal(r)).collect();
        p.push(sample::uniform(r, -0.4, 0.4));
        p
    };
    let (mut kg_err, mut dirac_err, mut vol): (f64, f64, f64) = (0.0, 0.0, 0.0);
    let mut coefficient = 0.0;
    for eta in [-1.0, 1.0] {
        for m in [0.5, 1.0, 2.0] {
            let pts: Vec<Vec<f64>> = (0..10).map(|_| kg_point(r)).collect();
            let fam = ContactFamily::KleinGordon { m, eta, tau: 0.3 };
            kg_err = kg_err.max(contact_pullback_check(&fam, &pts)?.max_abs);
            for p in pts.iter().take(2) {
                let c = kg_volume_coefficient(m, eta, p)?;
                if eta == 1.0 && m == 1.0 {
                    coefficient = c;
                }
                vol = vol.max((c - eta * m.powi(3) / 16.0).abs());
            }
        }
        for t in [1u32, 2] {
            let fam = ContactFamily::Dirac { m: 1.3, eta, t };
            let pts: Vec<Vec<f64>> = (0..10)
                .map(|_| {
                    (0..9)
                        .map(|i| {
                            if i < 4 {
                                0.5 + 0.5 * sample::normal(r)
                            } else {
                                sample::normal(r)
                            }
                        })
                        .collect()
                })
                .collect();
            dirac_err = dirac_err.max(contact_pullback_check(&fam, &pts)?.max_abs);
        }
    }
    out.push(Check::at_most(
        "KG closed form vs numeric pullback",
        kg_err,
        1e-6,
    ));
    out.push(Check::at_most(
        "Dirac closed form vs numeric pullback",
        dirac_err,
        1e-6,
    ));
    out.push(Check::at_most(
        format!("KG volume coefficient vs eta m^3/16 (measured {coefficient:.6} at eta=1, m=1)"),
        vol,
        1e-8,
    ));
    Ok(out)
}

struct RepCase {
    f: RepFunction,
    f2: RepFunction,
    profile: Profile,
    order: usize,
}

fn rep_cases() -> Result<Vec<RepCase>> {
    let mut v = vec![];
    let b = |chart, c: &[f64], r, amp| Profile::bump(chart, c, r, amp);
    for eta in [-1.0, 1.0] {
        let p = b(ChartId::HM, &[0.3, -0.2, 0.1], 0.8, cplx(1.0, 0.3));
        let q = b(ChartId::HM, &[0.1, 0.0, 0.2], 0.7, cplx(-0.5, 1.0));
        v.push(RepCase {
            f: RepFunction::klein_gordon(1.2, eta, p.clone()),
            f2: RepFunction::klein_gordon(1.2, eta, q),
            profile: p,
            order: 16,
        });
        let spec = MassiveSpec::new(1.5, eta, 1)?;
        let p = b(
            ChartId::HM_P1_S,
            &[0.2, 0.0, 0.1, 0.3, -0.2],
            0.7,
            cplx(1.0, 0.0),
        );
        let q = b(
            ChartId::HM_P1_S,
            &[0.1, 0.1, 0.0, 0.2, 0.0],
            0.6,
            cplx(0.2, 0.9),
        );
        v.push(RepCase {
            f: RepFunction::from_section(&massive_section(&spec, &p)),
            f2: RepFunction::from_section(&massive_section(&spec, &q)),
            profile: p,
            order: 8,
        });
        for chi in [-1.0, 1.0] {
            let spec = MasslessSpec::new(eta, chi, 1)?;
            let p = b(ChartId::CPLUS, &[0.2, 0.3, 1.0], 0.6, cplx(1.0, -0.4));
            let q = b(ChartId::CPLUS, &[0.1, 0.3, 0.9], 0.5, cplx(0.3, 0.3));
            v.push(RepCase {
                f: RepFunction::from_section(&massless_section(&spec, &p)),
                f2: RepFunction::from_section(&massless_section(&spec, &q)),
                profile: p,
                order: 16,
            });
        }
    }
    Ok(v)
}

fn rep_point(c: &RepCase, r: &mut SampleRng) -> Result<Vec<C64>> {
    let pt = near(r, &c.profile, 0.3)?;
    let p = c.f.carrier.point_of(&pt)?;
    let phase = cplx(0.0, sample::uniform(r, -PI, PI)).exp();
    Ok(match c.f.carrier {
        Carrier::KleinGordon { .. } => p,
        Carrier::Spinor { .. } => p.iter().map(|z| z * phase).collect(),
    })
}

fn representation(r: &mut SampleRng) -> Result<Vec<Check>> {
    let (mut hom, mut unit, mut mom): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for c in rep_cases()? {
        let (mut err, mut scale): (f64, f64) = (0.0, 0.0);
        for _ in 0..50 {
            let p = rep_point(&c, r)?;
            let (g1, g2) = (sample::group(r, 0.15), sample::group(r, 0.15));
            let lhs = rep_on_f(&g1, &rep_on_f(&g2, &c.f)).eval(&p)?;
            let rhs = rep_on_f(&g1.mul(&g2), &c.f).eval(&p)?;
            err = err.max((lhs - rhs).norm());
            scale = scale.max(rhs.norm());
        }
        hom = hom.max(err / scale);

        let grid = build_grid(&c.profile, c.order, c.f.carrier.measure())?;
        let base = inner(&c.f, &c.f2, &grid)?;
        for _ in 0..3 {
            let g = sample::group(r, 0.05);
            unit =
                unit.max((inner_transformed(&g, &c.f, &c.f2, &grid)? - base).norm() / base.norm());
        }

        if c.profile.chart != ChartId::HM_P1_S {
            let sum = wave_synth(&c.f, &grid)?;
            let step = 5e-3;
            let origin = FourVector::new(
                0.1 - 2.0 * step,
                -0.2 - 2.0 * step,
                0.05 - 2.0 * step,
                0.3 - 2.0 * step,
            );
            let field = SampledField::sample(origin, step, [5; 4], sum.dim, |x| sum.eval(x))?;
            for k in 1..=4 {
                let op = wave_operator(&AlgElem::p(k), &c.f.carrier, &field)?;
                let mult = momentum_weighted_wave(k, &c.f, &grid)?;
                let want =
                    SampledField::sample(op.origin, op.step, op.n, op.dim, |x| mult.eval(x))?;
                mom = mom.max(relative_difference(&want, &op)?);
            }
        }
    }
    Ok(vec![
        Check::at_most("delta' homomorphism (pointwise)", hom, 1e-12),
        Check::at_most("unitarity via quadrature", unit, 1e-8),
        Check::at_most("P^k two-path oracle", mom, 1e-5),
    ])
}
