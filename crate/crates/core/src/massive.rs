//! Massive particles (orbit type 5): Klein–Gordon (T = 0), Dirac (T = 1) and
//! higher spin (T > 1) prewaves and waves on ℋᵐ and ℋᵐ × P₁(ℂ), the
//! fibration r: 𝓑 → ℋᵐ × P₁(ℂ) with its section σ(K, w), and the state-space
//! dynamical variables.

use crate::error::{Error, Result};
use crate::measure::{ChartPoint, Measure, Profile, QuadratureGrid};
use crate::section::{plane_phase, HomogeneousSection, Trivialization};
use crate::spinor::*;
use crate::synth::PlaneWaveSum;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MassiveSpec {
    pub m: f64,
    pub eta: f64,
    #[serde(rename = "T")]
    pub t: u32,
}

impl MassiveSpec {
    pub fn new(m: f64, eta: f64, t: u32) -> Result<Self> {
        if !(m.is_finite() && m > 0.0) {
            return Err(Error::Invalid(format!("mass must be positive, got {m}")));
        }
        if eta.abs() != 1.0 {
            return Err(Error::Invalid(format!("eta must be ±1, got {eta}")));
        }
        Ok(MassiveSpec { m, eta, t })
    }

    /// The dual element {(iT/8π)σ₃, ηmI} of the orbit.
    pub fn alpha(&self) -> CoForm {
        CoForm {
            a: sigma(3) * cplx(0.0, self.t as f64 / (8.0 * PI)),
            k: Herm2::project(id2().scale(self.eta * self.m)),
        }
    }

    pub fn trivialization(&self) -> Trivialization {
        Trivialization::massive(self.m, self.eta)
    }
}

/// Checks det K = m² (relative 1e-10) and Tr K > 0.
pub fn check_mass_shell(k: &Herm2, m: f64) -> Result<()> {
    let dev = (k.det() - m * m).abs();
    if dev > 1e-10 * (m * m).max(max_abs(k).powi(2)) || k.trace() <= 0.0 {
        return Err(Error::OffDomain(format!(
            "not on the mass shell m = {m} (det deviation {dev:e})"
        )));
    }
    Ok(())
}

/// Point of P₁(ℂ): unit representative whose first nonzero entry is real ≥ 0.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProjSpinor(V2);

impl ProjSpinor {
    pub fn new(v: V2) -> Result<Self> {
        let n = v.norm();
        if !(n > 0.0 && n.is_finite()) {
            return Err(Error::Degenerate(
                "zero spinor has no projective class".into(),
            ));
        }
        let lead = if v[0].norm() > 0.0 { v[0] } else { v[1] };
        let phase = lead.conj() / lead.norm();
        Ok(ProjSpinor(v.map(|x| x * phase / n)))
    }

    pub fn rep(&self) -> V2 {
        self.0
    }

    /// Equality of classes.
    pub fn dist(&self, o: &ProjSpinor) -> f64 {
        (self.0 - o.0).norm()
    }
}

/// r(w, z) = (m(ww* − ε conj(zz*) ε), [w]) on 𝓑 = {z*w = 1}.
pub fn dirac_r(m: f64, w: &V2, z: &V2) -> Result<(Herm2, ProjSpinor)> {
    let c = (z.adjoint() * w)[(0, 0)];
    if (c - cplx(1.0, 0.0)).norm() > 1e-12 * (1.0 + w.norm() * z.norm()) {
        return Err(Error::OffDomain(format!("z*w = {c} differs from 1")));
    }
    let e = eps();
    let k = (w * w.adjoint() - e * conj(&(z * z.adjoint())) * e) * cplx(m, 0.0);
    Ok((Herm2::project(k), ProjSpinor::new(*w)?))
}

/// σ(K, w) = (w | −(1/m) K ε w̄) / √(m w*K⁻¹w), which carries (mI, [e₁]) to
/// (K, [w]).
pub fn dirac_section(m: f64, k: &Herm2, w: &V2) -> Result<SL2> {
    if w.norm() == 0.0 {
        return Err(Error::Degenerate("σ(K, w) needs w ≠ 0".into()));
    }
    let kinv = adjugate(k) / k.determinant();
    let q = (w.adjoint() * kinv * w)[(0, 0)] * m;
    if !(q.re > 0.0) || q.im.abs() > 1e-10 * q.re {
        return Err(Error::Singular(format!(
            "m w*K⁻¹w = {q} is not real positive"
        )));
    }
    let col2 = -(k.matrix() * eps() * conj_v(w)) / cplx(m, 0.0);
    let s = q.re.sqrt();
    Ok(SL2::project(M2::new(
        w[0] / s,
        col2[0] / s,
        w[1] / s,
        col2[1] / s,
    )))
}

/// Point (w, z) = (a, mK⁻¹a)/√(m a*K⁻¹a) of r⁻¹(K, [a]).
pub fn dirac_fiber_point(m: f64, k: &Herm2, a: &V2) -> Result<[C64; 4]> {
    let kinv = adjugate(k) / k.determinant();
    let q = ((a.adjoint() * kinv * a)[(0, 0)] * m).re;
    if !(q > 0.0) {
        return Err(Error::Singular("m a*K⁻¹a must be positive".into()));
    }
    let s = 1.0 / q.sqrt();
    let z = kinv * a * cplx(m * s, 0.0);
    Ok([a[0] * s, a[1] * s, z[0], z[1]])
}

/// Dirac matrices γ¹..γ³, γ⁴ (index 0..3) in the chiral form
/// γ⁴ = [[0, I], [I, 0]], γᵏ = [[0, −σₖ], [σₖ, 0]].
pub fn gamma(nu: usize) -> [[C64; 4]; 4] {
    let mut g = [[cplx(0.0, 0.0); 4]; 4];
    let (up, down) = if nu == 3 {
        (id2(), id2())
    } else {
        (-sigma(nu + 1), sigma(nu + 1))
    };
    for i in 0..2 {
        for j in 0..2 {
            g[i][j + 2] = up[(i, j)];
            g[i + 2][j] = down[(i, j)];
        }
    }
    g
}

/// f(K)·exp(−iπη Tr(K ε H̄ ε)) for a profile on the HM chart.
pub fn kg_prewave(spec: &MassiveSpec, f: &Profile, h: &Herm2, k: &Herm2) -> Result<C64> {
    check_mass_shell(k, spec.m)?;
    let pt = ChartPoint::Hm(k.four().spatial());
    Ok(f.eval_point(&pt) * plane_phase(spec.eta, k, h))
}

/// Plane-wave expansion of the Klein–Gordon wave of `f` on `grid`.
pub fn kg_synth(spec: &MassiveSpec, f: &Profile, grid: &QuadratureGrid) -> Result<PlaneWaveSum> {
    if !matches!(grid.measure, Measure::Nu { .. }) {
        return Err(Error::Invalid(
            "the Klein-Gordon wave integrates against ν".into(),
        ));
    }
    PlaneWaveSum::from_grid(spec.eta, 1, grid, |pt, out| {
        out[0] = f.eval_point(pt);
        Ok(())
    })
}

/// ψ̃_f(x) = ∫ ψ_f(h(x), ·) ν.
pub fn kg_wave(
    spec: &MassiveSpec,
    f: &Profile,
    x: FourVector,
    grid: &QuadratureGrid,
) -> Result<C64> {
    Ok(kg_synth(spec, f, grid)?.eval(x)?[0])
}

/// Homogeneous section of degree −T on 𝓑 with base profile `f`.
pub fn massive_section(spec: &MassiveSpec, f: &Profile) -> HomogeneousSection {
    HomogeneousSection::new(spec.trivialization(), spec.t, f.clone())
}

/// Prewave at (H, K, [a]) of a degree −T section: f(b)·phase·b^{⊗T} for the
/// representative b = (a, mK⁻¹a)/√(m a*K⁻¹a).
pub fn dirac_prewave(
    spec: &MassiveSpec,
    f: &HomogeneousSection,
    h: &Herm2,
    k: &Herm2,
    a: &ProjSpinor,
) -> Result<Vec<C64>> {
    check_mass_shell(k, spec.m)?;
    let b = dirac_fiber_point(spec.m, k, &a.rep())?;
    f.prewave_at(h, &b)
}

/// T ≥ 2 variant of [`dirac_prewave`]; the value lies in (ℂ⁴)^{⊗T}.
pub fn high_t_prewave(
    spec: &MassiveSpec,
    f: &HomogeneousSection,
    h: &Herm2,
    k: &Herm2,
    a: &ProjSpinor,
) -> Result<Vec<C64>> {
    if spec.t < 2 {
        return Err(Error::Invalid("higher-spin prewaves need T ≥ 2".into()));
    }
    dirac_prewave(spec, f, h, k, a)
}

/// Plane-wave expansion of ∫ ψ_f(h(x), ·, ·) μ.
pub fn dirac_synth(f: &HomogeneousSection, grid: &QuadratureGrid) -> Result<PlaneWaveSum> {
    if !matches!(grid.measure, Measure::Mu { .. }) {
        return Err(Error::Invalid(
            "massive spinor waves integrate against μ".into(),
        ));
    }
    f.synth(grid)
}

pub fn dirac_wave(
    f: &HomogeneousSection,
    x: FourVector,
    grid: &QuadratureGrid,
) -> Result<Vec<C64>> {
    dirac_synth(f, grid)?.eval(x)
}

/// β[z] = u with 2zz*/(z*z) = h(u, 1).
pub fn beta_sphere(a: &ProjSpinor) -> Vec3 {
    let z = a.rep();
    let m = z * z.adjoint() * cplx(2.0 / z.norm_squared(), 0.0);
    Herm2::project(m).four().spatial()
}

/// Inverse of [`beta_sphere`]: the kernel of h(u, −1).
pub fn beta_inverse(u: &Vec3) -> Result<ProjSpinor> {
    let n = norm3(u);
    if (n - 1.0).abs() > 1e-12 {
        return Err(Error::Invalid("u must be a unit vector".into()));
    }
    // h(u,1)/2 is the projector onto [z]; take its better-conditioned column.
    let p = h_map(FourVector::from_parts(*u, 1.0)).matrix();
    let col = if p[(0, 0)].re >= p[(1, 1)].re { 0 } else { 1 };
    ProjSpinor::new(V2::new(p[(0, col)], p[(1, col)]))
}

/// Dynamical variables (P, l, g, W) at a state (K = m h(k, k₄), u, h(x)).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StateVars {
    pub p: FourVector,
    pub l: Vec3,
    pub g: Vec3,
    pub w: FourVector,
}

/// Massive state-space dynamical variables. T = 0 gives the Klein–Gordon
/// triple.
pub fn statespace_dynvars(
    spec: &MassiveSpec,
    k: &Herm2,
    u: &Vec3,
    x: FourVector,
) -> Result<StateVars> {
    check_mass_shell(k, spec.m)?;
    let kv = k.four().scale(1.0 / spec.m);
    let (kk, k4) = (kv.spatial(), kv.x4());
    let d = k4 - dot(&kk, u);
    let tt = spec.t as f64 / (4.0 * PI);
    if tt != 0.0 && d <= 1e-12 * k4 {
        return Err(Error::Singular(format!("k4 - <k,u> = {d:e}")));
    }
    let p = kv.scale(-spec.eta * spec.m);
    let (pv, p4) = (p.spatial(), p.x4());
    let xs = x.spatial();
    let spin_l = if tt == 0.0 {
        [0.0; 3]
    } else {
        scale3(tt / d, &sub3(&scale3(k4, u), &kk))
    };
    let spin_g = if tt == 0.0 {
        [0.0; 3]
    } else {
        scale3(tt / d, &cross(&kk, u))
    };
    let l = add3(&spin_l, &cross(&xs, &pv));
    let g = add3(&spin_g, &sub3(&scale3(p4, &xs), &scale3(x.x4(), &pv)));
    let wv = scale3(p4, &spin_l);
    let w4 = if tt == 0.0 {
        0.0
    } else {
        -spec.eta * spec.m * tt * dot(&sub3(&scale3(k4, u), &kk), &kk) / d
    };
    Ok(StateVars {
        p,
        l,
        g,
        w: FourVector::from_parts(wv, w4),
    })
}

/// ν₂(K, h(x, x⁴)) = (K, x − (x⁴/k₄) k) with K = m h(k, k₄).
pub fn nu2_kg(spec: &MassiveSpec, k: &Herm2, h: &Herm2) -> Result<(Herm2, Vec3)> {
    check_mass_shell(k, spec.m)?;
    let kv = k.four();
    let x = h.four();
    Ok((
        *k,
        sub3(&x.spatial(), &scale3(x.x4() / kv.x4(), &kv.spatial())),
    ))
}

/// N·(K, H) = (K, H − N(η/m²)K), the deck action of the covering.
pub fn covering_shift(spec: &MassiveSpec, n: i64, k: &Herm2, h: &Herm2) -> (Herm2, Herm2) {
    let s = n as f64 * spec.eta / (spec.m * spec.m);
    (*k, Herm2::project(h.matrix() - k.matrix().scale(s)))
}
