//! Residuals of the wave equations and gauge identities.
//!
//! A field is probed through a [`Jet`] (value, first and pure second
//! derivatives) taken either analytically from a [`PlaneWaveSum`] or by
//! 5-point finite differences of an evaluator. Each equation is written as
//! a sum of terms; the relative residual divides by the largest term seen
//! over the sample set.

use crate::error::{Error, Result};
use crate::massive::gamma;
use crate::quad::par_map;
use crate::spinor::*;
use crate::synth::PlaneWaveSum;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    AnalyticUnderIntegral,
    FiniteDifference,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub equation: String,
    pub max_abs: f64,
    pub max_rel: f64,
    pub samples: usize,
    pub method: Method,
}

impl ResidualReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.max_rel <= tol
    }
}

/// Value, gradient ∂_ν and pure second derivatives ∂_ν² (ν = 0..3 for
/// x¹..x⁴) of a field at one point.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet {
    pub value: Vec<C64>,
    pub d1: [Vec<C64>; 4],
    pub d2: [Vec<C64>; 4],
}

impl Jet {
    /// Exact jet of a finite plane-wave sum.
    pub fn analytic(sum: &PlaneWaveSum, x: FourVector) -> Result<Jet> {
        let d2 = |nu: usize| sum.second(x, nu, nu);
        Ok(Jet {
            value: sum.eval(x)?,
            d1: sum.gradient(x)?,
            d2: [d2(0)?, d2(1)?, d2(2)?, d2(3)?],
        })
    }

    /// Jet of the single plane wave value·exp(2πiη⟨k, x − x₀⟩) at x₀.
    pub fn plane(eta: f64, k: &FourVector, value: Vec<C64>) -> Jet {
        let s = PlaneWaveSum {
            eta,
            dim: value.len(),
            nodes: vec![],
        };
        let scaled = |c: C64| value.iter().map(|v| v * c).collect::<Vec<_>>();
        let f = |nu| s.d_factor(nu, k);
        Jet {
            d1: [scaled(f(0)), scaled(f(1)), scaled(f(2)), scaled(f(3))],
            d2: [
                scaled(f(0) * f(0)),
                scaled(f(1) * f(1)),
                scaled(f(2) * f(2)),
                scaled(f(3) * f(3)),
            ],
            value,
        }
    }

    /// 5-point central differences of `field` with step `h`.
    pub fn finite_difference<F>(field: &F, x: FourVector, h: f64) -> Result<Jet>
    where
        F: Fn(FourVector) -> Result<Vec<C64>> + ?Sized,
    {
        if !(h > 0.0) {
            return Err(Error::Invalid(
                "finite-difference step must be positive".into(),
            ));
        }
        let value = field(x)?;
        let n = value.len();
        let mut d1: [Vec<C64>; 4] = Default::default();
        let mut d2: [Vec<C64>; 4] = Default::default();
        for nu in 0..4 {
            let at = |j: f64| {
                let mut y = x;
                y.0[nu] += j * h;
                field(y)
            };
            let (m2, m1, p1, p2) = (at(-2.0)?, at(-1.0)?, at(1.0)?, at(2.0)?);
            d1[nu] = (0..n)
                .map(|i| (m2[i] - m1[i] * 8.0 + p1[i] * 8.0 - p2[i]) / (12.0 * h))
                .collect();
            d2[nu] = (0..n)
                .map(|i| {
                    (-m2[i] + m1[i] * 16.0 - value[i] * 30.0 + p1[i] * 16.0 - p2[i])
                        / (12.0 * h * h)
                })
                .collect();
        }
        Ok(Jet { value, d1, d2 })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "equation", rename_all = "kebab-case")]
pub enum Equation {
    /// (□ + 4π²m²)ψ = 0 with □ = ∂₄² − ∂₁² − ∂₂² − ∂₃².
    KleinGordon { m: f64 },
    /// (γ^ν ∂_ν − 2πiηm)ψ = 0.
    Dirac { m: f64, eta: f64 },
    /// χ = +1: (σ·∇ + ∂₄)ψ = 0; χ = −1: (∂₄ − σ·∇)ψ = 0.
    Weyl { chi: f64 },
    /// χ = +1: ∇^{AA′}ψ_{A′B…} = 0; χ = −1: ∇_{A′A}ψ_{A′B…} = 0.
    Penrose { chi: f64, t: u32 },
    /// □Ã^μ = 0 componentwise.
    Dalembert,
    /// Σ_μ ∂Ã^μ/∂x^μ = 0.
    Lorenz,
}

impl Equation {
    pub fn tag(&self) -> &'static str {
        match self {
            Equation::KleinGordon { .. } => "klein-gordon",
            Equation::Dirac { .. } => "dirac",
            Equation::Weyl { .. } => "weyl",
            Equation::Penrose { .. } => "penrose",
            Equation::Dalembert => "dalembert",
            Equation::Lorenz => "lorenz",
        }
    }

    fn check_dim(&self, n: usize) -> Result<()> {
        let want = match self {
            Equation::KleinGordon { .. } => None,
            Equation::Dirac { .. } | Equation::Dalembert | Equation::Lorenz => Some(4),
            Equation::Weyl { .. } => Some(2),
            Equation::Penrose { t, .. } => Some(2usize.pow(*t)),
        };
        match want {
            Some(w) if w != n => Err(Error::Invalid(format!(
                "{} needs {w} components, got {n}",
                self.tag()
            ))),
            _ => Ok(()),
        }
    }

    /// The terms whose sum is the residual at one jet.
    pub fn terms(&self, j: &Jet) -> Result<Vec<Vec<C64>>> {
        self.check_dim(j.value.len())?;
        let scale = |v: &[C64], c: C64| v.iter().map(|x| x * c).collect::<Vec<_>>();
        let one = cplx(1.0, 0.0);
        Ok(match *self {
            Equation::KleinGordon { m } => wave_terms(j, Some(4.0 * PI * PI * m * m)),
            Equation::Dalembert => wave_terms(j, None),
            Equation::Dirac { m, eta } => {
                let mut t: Vec<Vec<C64>> =
                    (0..4).map(|nu| mat_vec4(&gamma(nu), &j.d1[nu])).collect();
                t.push(scale(&j.value, cplx(0.0, -2.0 * PI * eta * m)));
                t
            }
            Equation::Weyl { chi } => {
                let mut t: Vec<Vec<C64>> = (0..3)
                    .map(|k| {
                        let v = sigma(k + 1) * V2::new(j.d1[k][0], j.d1[k][1]);
                        vec![v[0] * chi, v[1] * chi]
                    })
                    .collect();
                t.push(scale(&j.d1[3], one));
                t
            }
            Equation::Penrose { chi, t } => (0..4)
                .map(|nu| penrose_term(chi, t, nu, &j.d1[nu]))
                .collect(),
            Equation::Lorenz => (0..4).map(|mu| vec![j.d1[mu][mu]]).collect(),
        })
    }
}

fn wave_terms(j: &Jet, mass_term: Option<f64>) -> Vec<Vec<C64>> {
    let neg = |v: &[C64]| v.iter().map(|x| -x).collect::<Vec<_>>();
    let mut t = vec![j.d2[3].clone(), neg(&j.d2[0]), neg(&j.d2[1]), neg(&j.d2[2])];
    if let Some(c) = mass_term {
        t.push(j.value.iter().map(|x| x * c).collect());
    }
    t
}

fn mat_vec4(g: &[[C64; 4]; 4], v: &[C64]) -> Vec<C64> {
    (0..4)
        .map(|i| (0..4).map(|j| g[i][j] * v[j]).sum())
        .collect()
}

/// ½h(e_ν): the coefficient matrix of ∂_ν in ∇_{BB′}.
fn nabla_coeff(nu: usize) -> M2 {
    let mut e = [0.0; 4];
    e[nu] = 1.0;
    h_map(FourVector(e)).matrix() * cplx(0.5, 0.0)
}

/// Lowers every index of a rank-T spinor: ψ_{A…} = ε_{AA′}…ψ^{A′…}.
pub fn lower_all(v: &[C64], t: u32) -> Vec<C64> {
    let e = eps();
    let mut out = v.to_vec();
    for slot in 0..t {
        out = apply_slot(&e, &out, t, slot);
    }
    out
}

fn apply_slot(m: &M2, v: &[C64], t: u32, slot: u32) -> Vec<C64> {
    let stride = 2usize.pow(t - 1 - slot);
    (0..v.len())
        .map(|idx| {
            let bit = (idx / stride) % 2;
            let base = idx - bit * stride;
            m[(bit, 0)] * v[base] + m[(bit, 1)] * v[base + stride]
        })
        .collect()
}

// Contraction of the first index of the lowered field with the ∂_ν part of
// the operator; the output carries the free index in the first slot.
fn penrose_term(chi: f64, t: u32, nu: usize, d: &[C64]) -> Vec<C64> {
    let low = lower_all(d, t);
    let n = nabla_coeff(nu);
    let e = eps();
    let op = if chi > 0.0 {
        // ∇^{AA′} = (−ε) ∇ (−ε)ᵗ = −ε∇ε, contracted on A′.
        -(e * n * e)
    } else {
        // ∇_{A′A} contracted on A′.
        n.transpose()
    };
    apply_slot(&op, &low, t, 0)
}

fn max_norm(v: &[C64]) -> f64 {
    v.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

/// Aggregates the equation over a set of jets.
pub fn residual_from_jets(eq: &Equation, jets: &[Jet], method: Method) -> Result<ResidualReport> {
    let mut max_abs = 0.0f64;
    let mut scale = 0.0f64;
    for j in jets {
        let terms = eq.terms(j)?;
        let n = terms[0].len();
        let sum: Vec<C64> = (0..n).map(|i| terms.iter().map(|t| t[i]).sum()).collect();
        max_abs = max_abs.max(max_norm(&sum));
        for t in &terms {
            scale = scale.max(max_norm(t));
        }
    }
    Ok(ResidualReport {
        equation: eq.tag().into(),
        max_abs,
        max_rel: if scale > 0.0 { max_abs / scale } else { 0.0 },
        samples: jets.len(),
        method,
    })
}

/// Where the jets come from.
pub enum Source<'a> {
    Synth(&'a PlaneWaveSum),
    Field {
        field: &'a (dyn Fn(FourVector) -> Result<Vec<C64>> + Sync),
        step: f64,
    },
}

pub fn residual(eq: &Equation, src: &Source, points: &[FourVector]) -> Result<ResidualReport> {
    let (jets, method) = match src {
        Source::Synth(s) => (
            par_map(points.len(), |i| Jet::analytic(s, points[i])),
            Method::AnalyticUnderIntegral,
        ),
        Source::Field { field, step } => (
            par_map(points.len(), |i| {
                Jet::finite_difference(*field, points[i], *step)
            }),
            Method::FiniteDifference,
        ),
    };
    let jets = jets.into_iter().collect::<Result<Vec<_>>>()?;
    residual_from_jets(eq, &jets, method)
}

pub fn kg_residual(m: f64, src: &Source, points: &[FourVector]) -> Result<ResidualReport> {
    residual(&Equation::KleinGordon { m }, src, points)
}

pub fn dirac_residual(
    m: f64,
    eta: f64,
    src: &Source,
    points: &[FourVector],
) -> Result<ResidualReport> {
    residual(&Equation::Dirac { m, eta }, src, points)
}

pub fn weyl_residual(chi: f64, src: &Source, points: &[FourVector]) -> Result<ResidualReport> {
    residual(&Equation::Weyl { chi }, src, points)
}

pub fn penrose_residual(
    chi: f64,
    t: u32,
    src: &Source,
    points: &[FourVector],
) -> Result<ResidualReport> {
    residual(&Equation::Penrose { chi, t }, src, points)
}

pub fn dalembert_residual(src: &Source, points: &[FourVector]) -> Result<ResidualReport> {
    residual(&Equation::Dalembert, src, points)
}

pub fn lorenz_gauge_residual(src: &Source, points: &[FourVector]) -> Result<ResidualReport> {
    residual(&Equation::Lorenz, src, points)
}

/// Regular n³ spatial grid on [lo, hi]³ at time x⁴ = t.
pub fn spatial_grid(n: usize, lo: f64, hi: f64, t: f64) -> Vec<FourVector> {
    let c = |i: usize| {
        if n == 1 {
            0.5 * (lo + hi)
        } else {
            lo + (hi - lo) * i as f64 / (n - 1) as f64
        }
    };
    let mut out = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                out.push(FourVector::new(c(i), c(j), c(k), t));
            }
        }
    }
    out
}
