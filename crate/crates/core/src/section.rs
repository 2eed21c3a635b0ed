//! Trivializations (ρ, ℂᵈ, z₀) of the spinor families and S¹-homogeneous
//! functions on the orbit of z₀, stored as a base profile f₀ extended by
//! homogeneity: f(z) = t^{−T} f₀(r(z)) where z = t·σ(r(z)).

use crate::error::{Error, Result};
use crate::massive::{dirac_fiber_point, dirac_r, ProjSpinor};
use crate::massless::{cone_section, r_minus, r_plus};
use crate::measure::{hm_p1_point, ChartPoint, Measure, Profile, QuadratureGrid};
use crate::spinor::*;
use crate::synth::PlaneWaveSum;
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

/// exp(−iπη Tr(K ε H̄ ε)) = exp(2πiη⟨k, x⟩) for K = h(k), H = h(x).
pub fn plane_phase(eta: f64, k: &Herm2, h: &Herm2) -> C64 {
    let e = eps();
    let tr = (k.matrix() * e * conj(h) * e).trace();
    (cplx(0.0, -std::f64::consts::PI * eta) * tr).exp()
}

/// v^{⊗T}, with the first slot as the most significant index.
pub fn tensor_power(v: &[C64], t: u32) -> Vec<C64> {
    let mut out = vec![cplx(1.0, 0.0)];
    for _ in 0..t {
        out = out
            .iter()
            .flat_map(|a| v.iter().map(move |b| a * b))
            .collect();
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Family {
    /// ρ(A) = diag(A, (A*)⁻¹) on ℂ⁴, z₀ = (1,0,1,0).
    Massive { m: f64 },
    /// χ = +1: ρ₊(A) = A, z₀ = e₁. χ = −1: ρ₋(A) = (A*)⁻¹, z₀ = e₂.
    Massless { chi: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Trivialization {
    pub family: Family,
    pub eta: f64,
}

impl Trivialization {
    pub fn massive(m: f64, eta: f64) -> Self {
        Trivialization {
            family: Family::Massive { m },
            eta,
        }
    }

    pub fn massless(eta: f64, chi: f64) -> Self {
        Trivialization {
            family: Family::Massless { chi },
            eta,
        }
    }

    pub fn dim(&self) -> usize {
        match self.family {
            Family::Massive { .. } => 4,
            Family::Massless { .. } => 2,
        }
    }

    pub fn base_vector(&self) -> Vec<C64> {
        let (o, z) = (cplx(1.0, 0.0), cplx(0.0, 0.0));
        match self.family {
            Family::Massive { .. } => vec![o, z, o, z],
            Family::Massless { chi } if chi > 0.0 => vec![o, z],
            Family::Massless { .. } => vec![z, o],
        }
    }

    pub fn measure(&self) -> Measure {
        match self.family {
            Family::Massive { m } => Measure::Mu { m },
            Family::Massless { .. } => Measure::Omega,
        }
    }

    fn block(&self, upper: M2, lower: M2) -> DMatrix<C64> {
        match self.family {
            Family::Massive { .. } => {
                let mut r = DMatrix::zeros(4, 4);
                for i in 0..2 {
                    for j in 0..2 {
                        r[(i, j)] = upper[(i, j)];
                        r[(i + 2, j + 2)] = lower[(i, j)];
                    }
                }
                r
            }
            Family::Massless { chi } => {
                let m = if chi > 0.0 { upper } else { lower };
                DMatrix::from_fn(2, 2, |i, j| m[(i, j)])
            }
        }
    }

    /// ρ(A).
    pub fn rho(&self, a: &M2) -> DMatrix<C64> {
        self.block(*a, adjugate(a).adjoint() / a.determinant().conj())
    }

    /// dρ(a) for a ∈ sl(2,ℂ).
    pub fn d_rho(&self, a: &M2) -> DMatrix<C64> {
        self.block(*a, -a.adjoint())
    }

    /// Base point r(z) of a fiber point.
    pub fn r(&self, z: &[C64]) -> Result<ChartPoint> {
        if z.len() != self.dim() {
            return Err(Error::Invalid(format!(
                "fiber point needs {} components",
                self.dim()
            )));
        }
        match self.family {
            Family::Massive { m } => {
                let (k, a) = dirac_r(m, &V2::new(z[0], z[1]), &V2::new(z[2], z[3]))?;
                hm_p1_point(&k, &a.rep())
            }
            Family::Massless { chi } => {
                let v = V2::new(z[0], z[1]);
                let k = if chi > 0.0 { r_plus(&v)? } else { r_minus(&v)? };
                Ok(ChartPoint::Cplus(k.four().spatial()))
            }
        }
    }

    /// The section σ used to extend profiles by homogeneity.
    pub fn section(&self, pt: &ChartPoint) -> Result<Vec<C64>> {
        match (self.family, pt) {
            (Family::Massive { m }, ChartPoint::HmP1S(..) | ChartPoint::HmP1N(..)) => {
                let a = ProjSpinor::new(pt.spinor().unwrap())?;
                Ok(dirac_fiber_point(m, &pt.momentum(m), &a.rep())?.to_vec())
            }
            (Family::Massless { chi }, ChartPoint::Cplus(p)) => {
                let s = cone_section(p)?;
                let s = if chi > 0.0 { s } else { eps() * conj_v(&s) };
                Ok(vec![s[0], s[1]])
            }
            _ => Err(Error::Invalid(format!(
                "{:?} is not a base point of this family",
                pt.chart()
            ))),
        }
    }

    /// Momentum K at a base point (the linear momentum there is P = −ηK).
    pub fn momentum(&self, pt: &ChartPoint) -> Herm2 {
        match self.family {
            Family::Massive { m } => pt.momentum(m),
            Family::Massless { .. } => pt.momentum(0.0),
        }
    }
}

/// An S¹-homogeneous function of degree −T on the orbit of z₀.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HomogeneousSection {
    pub triv: Trivialization,
    #[serde(rename = "T")]
    pub degree: u32,
    pub profile: Profile,
}

fn inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

impl HomogeneousSection {
    pub fn new(triv: Trivialization, degree: u32, profile: Profile) -> Self {
        HomogeneousSection {
            triv,
            degree,
            profile,
        }
    }

    /// f(z) = t^{−T} f₀(r(z)), z = t·σ(r(z)).
    pub fn eval(&self, z: &[C64]) -> Result<C64> {
        let pt = self.triv.r(z)?;
        let f0 = self.profile.eval_point(&pt);
        if f0 == cplx(0.0, 0.0) {
            return Ok(f0);
        }
        let s = self.triv.section(&pt)?;
        let t = inner(&s, z) / inner(&s, &s);
        Ok(f0 * t.powi(-(self.degree as i32)))
    }

    /// Prewave f(z)·exp(−iπη Tr(K ε H̄ ε))·z^{⊗T} at any fiber point z.
    pub fn prewave_at(&self, h: &Herm2, z: &[C64]) -> Result<Vec<C64>> {
        let pt = self.triv.r(z)?;
        let k = self.triv.momentum(&pt);
        let c = self.eval(z)? * plane_phase(self.triv.eta, &k, h);
        Ok(tensor_power(z, self.degree)
            .into_iter()
            .map(|v| v * c)
            .collect())
    }

    /// Prewave at a base point, computed through the section.
    pub fn prewave(&self, h: &Herm2, pt: &ChartPoint) -> Result<Vec<C64>> {
        self.prewave_at(h, &self.triv.section(pt)?)
    }

    /// Plane-wave expansion of the wave ∫ ψ_f(h(x), ·) over `grid`.
    pub fn synth(&self, grid: &QuadratureGrid) -> Result<PlaneWaveSum> {
        if grid.measure != self.triv.measure() {
            return Err(Error::Invalid(
                "grid measure does not match the family".into(),
            ));
        }
        let d = self.triv.dim().pow(self.degree);
        PlaneWaveSum::from_grid(self.triv.eta, d, grid, |pt, out| {
            let f0 = self.profile.eval_point(pt);
            if f0 == cplx(0.0, 0.0) {
                return Ok(());
            }
            let s = self.triv.section(pt)?;
            for (o, v) in out.iter_mut().zip(tensor_power(&s, self.degree)) {
                *o = f0 * v;
            }
            Ok(())
        })
    }
}
