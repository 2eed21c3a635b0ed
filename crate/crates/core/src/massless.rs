//! Massless particles (orbit type 4): the cone C⁺, the fibrations r₊ and r₋
//! over it, Weyl (T = 1) and Penrose (general T) prewaves and waves, the
//! helicity operator, and the state-space picture over ℋᵐ × S² × H(2).

use crate::error::{Error, Result};
use crate::massive::StateVars;
use crate::measure::{Measure, Profile, QuadratureGrid};
use crate::section::{HomogeneousSection, Trivialization};
use crate::spinor::*;
use crate::synth::PlaneWaveSum;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Angle to the excluded ray below which the other chart is used.
pub const CHART_SWITCH_ANGLE: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MasslessSpec {
    pub eta: f64,
    pub chi: f64,
    #[serde(rename = "T")]
    pub t: u32,
}

impl MasslessSpec {
    pub fn new(eta: f64, chi: f64, t: u32) -> Result<Self> {
        if eta.abs() != 1.0 || chi.abs() != 1.0 {
            return Err(Error::Invalid(format!(
                "eta and chi must be ±1, got {eta}, {chi}"
            )));
        }
        if t == 0 {
            return Err(Error::Invalid("massless families need T ≥ 1".into()));
        }
        Ok(MasslessSpec { eta, chi, t })
    }

    /// Helicity eigenvalue −ηχT/4π.
    pub fn nu(&self) -> f64 {
        -self.eta * self.chi * self.t as f64 / (4.0 * PI)
    }

    /// {(iχT/8π)σ₃, η diag(1, 0)}.
    pub fn alpha(&self) -> CoForm {
        CoForm {
            a: sigma(3) * cplx(0.0, self.chi * self.t as f64 / (8.0 * PI)),
            k: Herm2::project(M2::new(
                cplx(self.eta, 0.0),
                cplx(0.0, 0.0),
                cplx(0.0, 0.0),
                cplx(0.0, 0.0),
            )),
        }
    }

    pub fn trivialization(&self) -> Trivialization {
        Trivialization::massless(self.eta, self.chi)
    }
}

/// Checks det K = 0 (to 1e-12·Tr²) and Tr K > 0.
pub fn check_cone(k: &Herm2) -> Result<()> {
    let tr = k.trace();
    if !(tr > 0.0) || k.det().abs() > 1e-12 * tr * tr {
        return Err(Error::OffDomain(format!(
            "not a point of C⁺ (det {:e}, trace {tr:e})",
            k.det()
        )));
    }
    Ok(())
}

fn nonzero(z: &V2) -> Result<()> {
    if z.norm() == 0.0 || !z.norm().is_finite() {
        return Err(Error::Degenerate(
            "the zero spinor lies over no cone point".into(),
        ));
    }
    Ok(())
}

/// J z = ε z̄.
pub fn j_spinor(z: &V2) -> V2 {
    eps() * conj_v(z)
}

/// r₊(z) = zz*.
pub fn r_plus(z: &V2) -> Result<Herm2> {
    nonzero(z)?;
    Ok(Herm2::project(z * z.adjoint()))
}

/// r₋(z) = −ε conj(zz*) ε.
pub fn r_minus(z: &V2) -> Result<Herm2> {
    nonzero(z)?;
    let e = eps();
    Ok(Herm2::project(-(e * conj(&(z * z.adjoint())) * e)))
}

/// σ_U(p) = (√(‖p‖+p³), (p¹+ip²)/√(‖p‖+p³)).
pub fn sigma_u(p: &Vec3) -> Result<V2> {
    let s = (norm3(p) + p[2]).sqrt();
    if !(s > 0.0) {
        return Err(Error::OffDomain(
            "σ_U is undefined on the negative p³ axis".into(),
        ));
    }
    Ok(V2::new(cplx(s, 0.0), cplx(p[0], p[1]) / s))
}

/// σ_V(p) = ((p¹−ip²)/√(‖p‖−p³), √(‖p‖−p³)).
pub fn sigma_v(p: &Vec3) -> Result<V2> {
    let s = (norm3(p) - p[2]).sqrt();
    if !(s > 0.0) {
        return Err(Error::OffDomain(
            "σ_V is undefined on the positive p³ axis".into(),
        ));
    }
    Ok(V2::new(cplx(p[0], -p[1]) / s, cplx(s, 0.0)))
}

/// Section of r₊ over the cone point with spatial part p: σ_U unless p is
/// within [`CHART_SWITCH_ANGLE`] of the negative p³ axis.
pub fn cone_section(p: &Vec3) -> Result<V2> {
    if norm3(p) == 0.0 {
        return Err(Error::OffDomain("the cone vertex is not in C⁺".into()));
    }
    let angle = p[0].hypot(p[1]).atan2(-p[2]);
    if angle < CHART_SWITCH_ANGLE {
        sigma_v(p)
    } else {
        sigma_u(p)
    }
}

/// Homogeneous section of degree −T with base profile `f` on C⁺.
pub fn massless_section(spec: &MasslessSpec, f: &Profile) -> HomogeneousSection {
    HomogeneousSection::new(spec.trivialization(), spec.t, f.clone())
}

fn check_section(spec: &MasslessSpec, f: &HomogeneousSection) -> Result<()> {
    if f.triv != spec.trivialization() || f.degree != spec.t {
        return Err(Error::Invalid(
            "section does not belong to this massless family".into(),
        ));
    }
    Ok(())
}

/// f(z)·exp(−iπη Tr(K ε H̄ ε))·z^{⊗T} at the section point over K.
pub fn penrose_prewave(
    spec: &MasslessSpec,
    f: &HomogeneousSection,
    k: &Herm2,
    h: &Herm2,
) -> Result<Vec<C64>> {
    check_section(spec, f)?;
    check_cone(k)?;
    f.prewave(h, &crate::measure::ChartPoint::Cplus(k.four().spatial()))
}

/// T = 1 case of [`penrose_prewave`].
pub fn weyl_prewave(
    spec: &MasslessSpec,
    f: &HomogeneousSection,
    k: &Herm2,
    h: &Herm2,
) -> Result<V2> {
    if spec.t != 1 {
        return Err(Error::Invalid("Weyl prewaves have T = 1".into()));
    }
    let v = penrose_prewave(spec, f, k, h)?;
    Ok(V2::new(v[0], v[1]))
}

/// Plane-wave expansion of ∫_{C⁺} ψ_f(·, h(x)) ω.
pub fn penrose_synth(
    spec: &MasslessSpec,
    f: &HomogeneousSection,
    grid: &QuadratureGrid,
) -> Result<PlaneWaveSum> {
    check_section(spec, f)?;
    if grid.measure != Measure::Omega {
        return Err(Error::Invalid("massless waves integrate against ω".into()));
    }
    f.synth(grid)
}

pub fn penrose_wave(
    spec: &MasslessSpec,
    f: &HomogeneousSection,
    x: FourVector,
    grid: &QuadratureGrid,
) -> Result<Vec<C64>> {
    penrose_synth(spec, f, grid)?.eval(x)
}

/// 𝔥ψ = (1/‖P⃗‖) Σₖ Pᵏ ŝᵏψ with P = −ηK and ŝᵏ = (1/4πi) dρ(iσₖ) acting on
/// every tensor slot.
pub fn helicity_apply(spec: &MasslessSpec, value: &[C64], k: &Herm2) -> Result<Vec<C64>> {
    check_cone(k)?;
    let n = 2usize.pow(spec.t);
    if value.len() != n {
        return Err(Error::Invalid(format!(
            "expected {n} components, got {}",
            value.len()
        )));
    }
    let p = k.four().spatial().map(|c| -spec.eta * c);
    let triv = spec.trivialization();
    let mut op = M2::zeros();
    for (i, pk) in p.iter().enumerate() {
        let d = triv.d_rho(&(sigma(i + 1) * IU));
        op += M2::new(d[(0, 0)], d[(0, 1)], d[(1, 0)], d[(1, 1)]) * cplx(*pk, 0.0);
    }
    let op = op / (cplx(0.0, 4.0 * PI) * norm3(&p));
    let mut out = vec![cplx(0.0, 0.0); n];
    for slot in 0..spec.t {
        let stride = 2usize.pow(spec.t - 1 - slot);
        for (idx, o) in out.iter_mut().enumerate() {
            let bit = (idx / stride) % 2;
            let base = idx - bit * stride;
            *o += op[(bit, 0)] * value[base] + op[(bit, 1)] * value[base + stride];
        }
    }
    Ok(out)
}

fn unit_momentum(k: &Herm2) -> Result<(Vec3, f64)> {
    let det = k.det();
    if !(det > 0.0) || k.trace() <= 0.0 {
        return Err(Error::OffDomain(
            "auxiliary momentum must lie in some ℋᵐ".into(),
        ));
    }
    let kv = k.four().scale(1.0 / det.sqrt());
    Ok((kv.spatial(), kv.x4()))
}

fn denominator(k: &Herm2, v: &Vec3) -> Result<(Vec3, f64, f64)> {
    if (norm3(v) - 1.0).abs() > 1e-12 {
        return Err(Error::Invalid("v must be a unit vector".into()));
    }
    let (kk, k4) = unit_momentum(k)?;
    let d = k4 - dot(&kk, v);
    if d <= 1e-12 * k4 {
        return Err(Error::Singular(format!("k4 - <k,v> = {d:e}")));
    }
    Ok((kk, k4, d))
}

/// Dynamical variables at the state (m h(k, k₄), v, h(x)) of ℋᵐ × S² × H(2)
/// read as a massless state. Any m > 0 gives the same values.
pub fn massless_statespace(
    spec: &MasslessSpec,
    k: &Herm2,
    v: &Vec3,
    x: FourVector,
) -> Result<StateVars> {
    let (kk, k4, d) = denominator(k, v)?;
    let p4 = -spec.eta / (2.0 * d);
    let pv = scale3(p4, v);
    let tt = spec.chi * spec.t as f64 / (4.0 * PI);
    let xs = x.spatial();
    let l = add3(
        &scale3(tt / d, &sub3(&scale3(k4, v), &kk)),
        &cross(&xs, &pv),
    );
    let g = add3(
        &scale3(tt / d, &cross(&kk, v)),
        &sub3(&scale3(p4, &xs), &scale3(x.x4(), &pv)),
    );
    let p = FourVector::from_parts(pv, p4);
    Ok(StateVars {
        p,
        l,
        g,
        w: p.scale(tt),
    })
}

/// ι₄(K, v, H) = (h(v, 1)/(2(k₄ − ⟨k, v⟩)), H).
pub fn iota4(k: &Herm2, v: &Vec3, h: &Herm2) -> Result<(Herm2, Herm2)> {
    let (_, _, d) = denominator(k, v)?;
    let c = h_map(FourVector::from_parts(*v, 1.0)).matrix() / cplx(2.0 * d, 0.0);
    Ok((Herm2::project(c), *h))
}
