//! The photon (massless, T = 2) in the symmetric-matrix trivialization:
//! complex vector fields on C⁺, the functions f_A they define, prewaves and
//! waves built directly from A, the electromagnetic field and potential,
//! and gauge invariance.
//!
//! The photon kinds are labelled by the energy sign −η and the helicity sign
//! ℓ = −ηχ. ℓ = −η uses r₊ (χ = +1), ℓ = η uses r₋ (χ = −1).

use crate::error::{Error, Result};
use crate::massless::{check_cone, cone_section};
use crate::measure::{ChartId, ChartPoint, Measure, Profile, QuadratureGrid};
use crate::quad::reduce_scalar;
use crate::section::plane_phase;
use crate::spinor::*;
use crate::synth::PlaneWaveSum;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhotonSpec {
    pub eta: f64,
    pub chi: f64,
}

impl PhotonSpec {
    pub fn new(eta: f64, chi: f64) -> Result<Self> {
        if eta.abs() != 1.0 || chi.abs() != 1.0 {
            return Err(Error::Invalid(format!(
                "eta and chi must be ±1, got {eta}, {chi}"
            )));
        }
        Ok(PhotonSpec { eta, chi })
    }

    /// Helicity sign ℓ = −ηχ.
    pub fn ell(&self) -> f64 {
        -self.eta * self.chi
    }
}

/// A nonzero symmetric 2×2 matrix of rank one.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SymPoint(M2);

impl SymPoint {
    pub fn new(s: M2) -> Result<Self> {
        let n = s.norm();
        if !(n > 0.0 && n.is_finite()) {
            return Err(Error::Degenerate("symmetric point must be nonzero".into()));
        }
        if (s[(0, 1)] - s[(1, 0)]).norm() > 1e-12 * n {
            return Err(Error::Invalid("matrix is not symmetric".into()));
        }
        if s.determinant().norm() > 1e-12 * n * n {
            return Err(Error::Invalid("symmetric point must have det s = 0".into()));
        }
        Ok(SymPoint(s))
    }

    /// z zᵗ.
    pub fn from_spinor(z: &V2) -> Result<Self> {
        SymPoint::new(z * z.transpose())
    }

    pub fn matrix(&self) -> M2 {
        self.0
    }

    pub fn scale(&self, c: C64) -> SymPoint {
        SymPoint(self.0 * c)
    }
}

/// J s = −ε s̄ ε.
pub fn j_sym(s: &SymPoint) -> SymPoint {
    SymPoint(-(eps() * conj(&s.0) * eps()))
}

/// r₊(s) = s s̄ / √Tr(s s̄) for sign > 0, r₋ = r₊ ∘ J otherwise.
pub fn sym_r(s: &SymPoint, sign: f64) -> Herm2 {
    let s = if sign > 0.0 { *s } else { j_sym(s) };
    let ss = s.0 * conj(&s.0);
    Herm2::project(ss / cplx(ss.trace().re.sqrt(), 0.0))
}

/// Point of r₊⁻¹(K) (sign > 0) or r₋⁻¹(K), built from the cone section.
pub fn sym_fiber(k: &Herm2, sign: f64) -> Result<SymPoint> {
    check_cone(k)?;
    let s = SymPoint::from_spinor(&cone_section(&k.four().spatial())?)?;
    Ok(if sign > 0.0 { s } else { j_sym(&s) })
}

fn complex_h(a: &[C64; 4]) -> M2 {
    id2() * a[3] + sigma(1) * a[0] + sigma(2) * a[1] + sigma(3) * a[2]
}

/// Components A¹..A⁴ of a complex matrix A = h(A_R) + i h(A_I).
pub fn components(a: &M2) -> [C64; 4] {
    let half = cplx(0.5, 0.0);
    [
        (a[(0, 1)] + a[(1, 0)]) * half,
        (a[(0, 1)] - a[(1, 0)]) * cplx(0.0, 0.5),
        (a[(0, 0)] - a[(1, 1)]) * half,
        (a[(0, 0)] + a[(1, 1)]) * half,
    ]
}

type FieldFn = dyn Fn(&Herm2) -> M2 + Send + Sync;

/// A complex vector field on C⁺, K ↦ A(K) ∈ gl(2, ℂ).
#[derive(Clone)]
pub struct ConeVectorField {
    eval: Arc<FieldFn>,
    support: Option<(Vec3, Vec3)>,
}

impl std::fmt::Debug for ConeVectorField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ConeVectorField")
            .field("support", &self.support)
            .finish()
    }
}

impl ConeVectorField {
    /// Field given by an arbitrary evaluator; tangency is not enforced.
    pub fn from_fn<F: Fn(&Herm2) -> M2 + Send + Sync + 'static>(f: F) -> Self {
        ConeVectorField {
            eval: Arc::new(f),
            support: None,
        }
    }

    /// Field with components A¹..A⁴ given by profiles on the C⁺ chart. A⁴ is
    /// corrected to A⁴ − ⟨A, k⟩/k⁴ so that the field is tangent.
    pub fn from_profiles(profiles: [Profile; 4]) -> Result<Self> {
        let mut lo = [f64::INFINITY; 3];
        let mut hi = [f64::NEG_INFINITY; 3];
        for p in &profiles {
            p.validate()?;
            if p.chart != ChartId::CPLUS {
                return Err(Error::Invalid(
                    "vector field components live on the C+ chart".into(),
                ));
            }
            for i in 0..3 {
                lo[i] = lo[i].min(p.center[i] - p.radius);
                hi[i] = hi[i].max(p.center[i] + p.radius);
            }
        }
        let f = move |k: &Herm2| {
            let pt = ChartPoint::Cplus(k.four().spatial());
            let a = [0, 1, 2, 3].map(|i| profiles[i].eval_point(&pt));
            complex_h(&tangent_projection(&a, &k.four()).0)
        };
        Ok(ConeVectorField {
            eval: Arc::new(f),
            support: Some((lo, hi)),
        })
    }

    pub fn at(&self, k: &Herm2) -> M2 {
        (self.eval)(k)
    }

    /// Bounding box of the support in the C⁺ chart, when known.
    pub fn support(&self) -> Option<(Vec3, Vec3)> {
        self.support
    }

    /// A + A_L with A_L(K) = L(K)K, which lies in the kernel of A ↦ f_A.
    pub fn gauge_shift<L: Fn(&Herm2) -> M2 + Send + Sync + 'static>(&self, l: L) -> Self {
        let base = self.eval.clone();
        ConeVectorField {
            eval: Arc::new(move |k: &Herm2| base(k) + l(k) * k.matrix()),
            support: self.support,
        }
    }

    /// Gauss–Legendre grid with `order` nodes per axis over the support box.
    pub fn grid(&self, order: usize) -> Result<QuadratureGrid> {
        let (lo, hi) = self.support.ok_or(Error::MissingParameter("support"))?;
        QuadratureGrid::on_box(ChartId::CPLUS, Measure::Omega, &lo, &hi, order)
    }
}

/// Removes the non-tangent part of A through its time component; returns
/// the corrected components and the size of the correction.
pub fn tangent_projection(a: &[C64; 4], k: &FourVector) -> ([C64; 4], f64) {
    let kk = k.0;
    let mk = a[3] * kk[3] - a[0] * kk[0] - a[1] * kk[1] - a[2] * kk[2];
    let mut out = *a;
    out[3] -= mk / kk[3];
    (out, (mk / kk[3]).norm())
}

/// Tr(A ε K̄ ε), zero exactly for tangent A.
pub fn tangency(a: &M2, k: &Herm2) -> C64 {
    (a * eps() * conj(&k.matrix()) * eps()).trace()
}

fn check_tangent(a: &M2, k: &Herm2) -> Result<()> {
    let t = tangency(a, k).norm();
    if t > 1e-10 * (1.0 + a.norm()) * k.matrix().norm() {
        return Err(Error::Invalid(format!(
            "field is not tangent to C+ (Tr A e K e = {t:e})"
        )));
    }
    Ok(())
}

// Least-squares solution of m = f s (exact when m is proportional to s).
fn ratio(m: &M2, s: &M2) -> C64 {
    let num: C64 = s.iter().zip(m.iter()).map(|(a, b)| a.conj() * b).sum();
    num / s.norm_squared()
}

/// f_A(s), defined by A(K) ε K̄ = f_A(s) s with K = r₊(s).
pub fn f_from_field(a: &ConeVectorField, s: &SymPoint) -> Result<C64> {
    let k = sym_r(s, 1.0);
    let ak = a.at(&k);
    check_tangent(&ak, &k)?;
    Ok(ratio(&(ak * eps() * conj(&k.matrix())), &s.0))
}

/// f̂_A(s) = conj(f_A(J s)), the function for ℓ = η with s ∈ r₋⁻¹(K).
pub fn f_hat_from_field(a: &ConeVectorField, s: &SymPoint) -> Result<C64> {
    Ok(f_from_field(a, &j_sym(s))?.conj())
}

/// Prewave at H = 0 from the vector field directly:
/// A(K)εK̄ (ℓ = −η) or −ε conj(A(K)) ε K ε (ℓ = η).
fn direct_value(spec: &PhotonSpec, a: &ConeVectorField, k: &Herm2) -> Result<M2> {
    let ak = a.at(k);
    check_tangent(&ak, k)?;
    let e = eps();
    Ok(if spec.chi > 0.0 {
        ak * e * conj(&k.matrix())
    } else {
        -(e * conj(&ak) * e * k.matrix() * e)
    })
}

/// ψ_A^{(−η, ℓ)}(H, K) from the direct matrix form.
pub fn photon_prewave(spec: &PhotonSpec, a: &ConeVectorField, h: &Herm2, k: &Herm2) -> Result<M2> {
    check_cone(k)?;
    Ok(direct_value(spec, a, k)? * plane_phase(spec.eta, k, h))
}

/// ψ_A^{(−η, ℓ)}(H, K) = f(s)·s·phase with s taken in r_{χ}⁻¹(K).
pub fn photon_prewave_via_f(
    spec: &PhotonSpec,
    a: &ConeVectorField,
    h: &Herm2,
    k: &Herm2,
) -> Result<M2> {
    let s = sym_fiber(k, spec.chi)?;
    let f = if spec.chi > 0.0 {
        f_from_field(a, &s)?
    } else {
        f_hat_from_field(a, &s)?
    };
    Ok(s.0 * (f * plane_phase(spec.eta, k, h)))
}

/// Helicity operator (1/‖P⃗‖) Σ Pᵏ (1/4πi) dμ(iσₖ) on a symmetric value, with
/// dμ₊(a)s = as + saᵗ and dμ₋(a)s = −a*s − s ā.
pub fn photon_helicity_apply(spec: &PhotonSpec, psi: &M2, k: &Herm2) -> Result<M2> {
    check_cone(k)?;
    let p = k.four().spatial().map(|c| -spec.eta * c);
    let mut out = M2::zeros();
    for (i, pk) in p.iter().enumerate() {
        let a = sigma(i + 1) * IU;
        let d = if spec.chi > 0.0 {
            a * psi + psi * a.transpose()
        } else {
            -(a.adjoint() * psi) - psi * conj(&a)
        };
        out += d * cplx(*pk, 0.0);
    }
    Ok(out / (cplx(0.0, 4.0 * PI) * norm3(&p)))
}

/// Electric and magnetic fields, complex valued.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EMSample {
    pub e: [C64; 3],
    pub b: [C64; 3],
}

impl EMSample {
    /// (E + iB)·σ.
    pub fn sigma_form(&self) -> M2 {
        let f = [0, 1, 2].map(|i| self.e[i] + IU * self.b[i]);
        sigma(1) * f[0] + sigma(2) * f[1] + sigma(3) * f[2]
    }
}

/// E(K) = A⁴K⃗ − K⁴A⃗, B(K) = A⃗ × K⃗.
pub fn em_at_cone(a: &ConeVectorField, k: &Herm2) -> EMSample {
    em_of(&components(&a.at(k)), &k.four())
}

fn em_of(a: &[C64; 4], k: &FourVector) -> EMSample {
    let kk = k.0;
    EMSample {
        e: [0, 1, 2].map(|i| a[3] * kk[i] - a[i] * kk[3]),
        b: [
            a[1] * kk[2] - a[2] * kk[1],
            a[2] * kk[0] - a[0] * kk[2],
            a[0] * kk[1] - a[1] * kk[0],
        ],
    }
}

/// max |A(K)εK̄ε − (E + iB)·σ| over the entries.
pub fn em_identity_check(a: &ConeVectorField, k: &Herm2) -> Result<f64> {
    check_cone(k)?;
    let ak = a.at(k);
    check_tangent(&ak, k)?;
    let lhs = ak * eps() * conj(&k.matrix()) * eps();
    Ok(max_abs(&(lhs - em_at_cone(a, k).sigma_form())))
}

fn cone_sum<F>(eta: f64, dim: usize, grid: &QuadratureGrid, value: F) -> Result<PlaneWaveSum>
where
    F: Fn(&Herm2, &mut [C64]) -> Result<()> + Sync + Send,
{
    if grid.measure != Measure::Omega {
        return Err(Error::Invalid("photon waves integrate against ω".into()));
    }
    PlaneWaveSum::from_grid(eta, dim, grid, |pt, out| value(&pt.momentum(0.0), out))
}

/// Plane-wave expansion of ψ̃_A^{(−η, ℓ)}, entries in row-major order.
pub fn photon_synth(
    spec: &PhotonSpec,
    a: &ConeVectorField,
    grid: &QuadratureGrid,
) -> Result<PlaneWaveSum> {
    cone_sum(spec.eta, 4, grid, |k, out| {
        let m = direct_value(spec, a, k)?;
        out.copy_from_slice(&[m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]]);
        Ok(())
    })
}

fn to_m2(v: &[C64]) -> M2 {
    M2::new(v[0], v[1], v[2], v[3])
}

pub fn photon_wave(
    spec: &PhotonSpec,
    a: &ConeVectorField,
    x: FourVector,
    grid: &QuadratureGrid,
) -> Result<M2> {
    Ok(to_m2(&photon_synth(spec, a, grid)?.eval(x)?))
}

/// Plane-wave expansion of the potential Ã^μ(x) = ∫ A^μ(K) e^{2πiη⟨k,x⟩} ω.
pub fn potential_synth(
    eta: f64,
    a: &ConeVectorField,
    grid: &QuadratureGrid,
) -> Result<PlaneWaveSum> {
    cone_sum(eta, 4, grid, |k, out| {
        out.copy_from_slice(&components(&a.at(k)));
        Ok(())
    })
}

pub fn potential_wave(
    eta: f64,
    a: &ConeVectorField,
    x: FourVector,
    grid: &QuadratureGrid,
) -> Result<[C64; 4]> {
    let v = potential_synth(eta, a, grid)?.eval(x)?;
    Ok([v[0], v[1], v[2], v[3]])
}

/// E(x), B(x) = 2πiη ∫ (E(K), B(K)) e^{2πiη⟨k,x⟩} ω.
pub fn em_wave(
    eta: f64,
    a: &ConeVectorField,
    x: FourVector,
    grid: &QuadratureGrid,
) -> Result<EMSample> {
    let sum = cone_sum(eta, 6, grid, |k, out| {
        let em = em_of(&components(&a.at(k)), &k.four());
        out[..3].copy_from_slice(&em.e);
        out[3..].copy_from_slice(&em.b);
        Ok(())
    })?;
    let v = sum.eval(x)?;
    let c = cplx(0.0, 2.0 * PI * eta);
    Ok(EMSample {
        e: [v[0] * c, v[1] * c, v[2] * c],
        b: [v[3] * c, v[4] * c, v[5] * c],
    })
}

/// The wave written through the electromagnetic field:
/// (iη/2π)((E + iB)·σ)ε for ℓ = −η, and (iη/2π) ε conj((E′ + iB′)·σ) for
/// ℓ = η, where E′, B′ are the fields of A with the exponent sign reversed.
pub fn photon_wave_from_em(
    spec: &PhotonSpec,
    a: &ConeVectorField,
    x: FourVector,
    grid: &QuadratureGrid,
) -> Result<M2> {
    let c = cplx(0.0, spec.eta / (2.0 * PI));
    if spec.chi > 0.0 {
        Ok(em_wave(spec.eta, a, x, grid)?.sigma_form() * eps() * c)
    } else {
        Ok(eps() * conj(&em_wave(-spec.eta, a, x, grid)?.sigma_form()) * c)
    }
}

/// φ(x) = −(iη/2π) ∫ g(K) e^{2πiη⟨k,x⟩} ω and its gradient ∂^μφ (indices
/// raised with diag(−1, −1, −1, +1)); the potential of A + gK is Ã + ∂φ.
pub fn gauge_gradient<G>(eta: f64, g: G, x: FourVector, grid: &QuadratureGrid) -> Result<[C64; 4]>
where
    G: Fn(&Herm2) -> C64 + Sync + Send,
{
    let sum = cone_sum(eta, 1, grid, |k, out| {
        out[0] = g(k) * cplx(0.0, -eta / (2.0 * PI));
        Ok(())
    })?;
    let d = sum.gradient(x)?;
    Ok([-d[0][0], -d[1][0], -d[2][0], d[3][0]])
}

/// ⟨ψ_A, ψ_A′⟩ = ∫ Tr(conj(A)εK A′εK̄)/Tr(s̄s) ω for ℓ = −η. For ℓ = η the
/// product of the same fields equals this value with the arguments swapped.
pub fn photon_inner(
    spec: &PhotonSpec,
    a: &ConeVectorField,
    a2: &ConeVectorField,
    grid: &QuadratureGrid,
) -> Result<C64> {
    let (a, a2) = if spec.chi > 0.0 { (a, a2) } else { (a2, a) };
    let e = eps();
    inner_sum(grid, |k| {
        let (x, y) = (a.at(k), a2.at(k));
        let tr_ss = (2.0 * k.four().x4()).powi(2);
        Ok((conj(&x) * e * k.matrix() * y * e * conj(&k.matrix())).trace() / tr_ss)
    })
}

/// The same product through the functions on 𝓑: ∫ conj(f(s)) f′(s) ω.
pub fn photon_inner_via_f(
    spec: &PhotonSpec,
    a: &ConeVectorField,
    a2: &ConeVectorField,
    grid: &QuadratureGrid,
) -> Result<C64> {
    inner_sum(grid, |k| {
        let s = sym_fiber(k, spec.chi)?;
        let (f, g) = if spec.chi > 0.0 {
            (f_from_field(a, &s)?, f_from_field(a2, &s)?)
        } else {
            (f_hat_from_field(a, &s)?, f_hat_from_field(a2, &s)?)
        };
        Ok(f.conj() * g)
    })
}

fn inner_sum<F>(grid: &QuadratureGrid, term: F) -> Result<C64>
where
    F: Fn(&Herm2) -> Result<C64> + Sync,
{
    if grid.measure != Measure::Omega {
        return Err(Error::Invalid("photon products integrate against ω".into()));
    }
    let vals = crate::quad::par_map(grid.len(), |i| -> Result<C64> {
        let (pt, w) = grid.point(i);
        let k = pt.momentum(0.0);
        let v = term(&k)?;
        if v == cplx(0.0, 0.0) {
            return Ok(v);
        }
        Ok(v * w * crate::measure::measure_density(&pt, &grid.measure)?)
    });
    let vals = vals.into_iter().collect::<Result<Vec<_>>>()?;
    reduce_scalar(vals.len(), |i| vals[i])
}
