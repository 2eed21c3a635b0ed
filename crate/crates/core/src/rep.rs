//! Representations of SL(2,ℂ) ⊕ H(2) on S¹-homogeneous functions (δ′), on
//! prewaves (two equivalent routes) and on waves, with the associated
//! quantum operators.

use crate::error::{Error, Result};
use crate::measure::{
    act_point, integrate, transported_density, ChartPoint, Measure, Profile, QuadratureGrid,
};
use crate::quad::{par_map, reduce_scalar};
use crate::section::{plane_phase, tensor_power, HomogeneousSection, Trivialization};
use crate::spinor::*;
use nalgebra::DMatrix;
use std::f64::consts::PI;
use std::sync::Arc;

/// Step of the 5-point stencils used for generators and vector fields.
pub const GENERATOR_STEP: f64 = 1e-3;

/// The space the homogeneous functions live on.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Carrier {
    /// Scalar functions on ℋᵐ; a point is K, stored as its four matrix entries.
    KleinGordon { m: f64, eta: f64 },
    /// Degree −T functions on the orbit of z₀ in ℂᵈ.
    Spinor { triv: Trivialization, degree: u32 },
}

impl Carrier {
    pub fn eta(&self) -> f64 {
        match self {
            Carrier::KleinGordon { eta, .. } => *eta,
            Carrier::Spinor { triv, .. } => triv.eta,
        }
    }

    pub fn measure(&self) -> Measure {
        match self {
            Carrier::KleinGordon { m, .. } => Measure::Nu { m: *m },
            Carrier::Spinor { triv, .. } => triv.measure(),
        }
    }

    /// Number of components of prewave and wave values.
    pub fn value_dim(&self) -> usize {
        match self {
            Carrier::KleinGordon { .. } => 1,
            Carrier::Spinor { triv, degree } => triv.dim().pow(*degree),
        }
    }

    /// The point over a base point (the section σ for spinor carriers).
    pub fn point_of(&self, pt: &ChartPoint) -> Result<Vec<C64>> {
        match self {
            Carrier::KleinGordon { m, .. } => match pt {
                ChartPoint::Hm(_) => Ok(pt.momentum(*m).matrix().iter().copied().collect()),
                _ => Err(Error::Invalid(
                    "Klein-Gordon functions live on the HM chart".into(),
                )),
            },
            Carrier::Spinor { triv, .. } => triv.section(pt),
        }
    }

    /// Momentum K at the base point of `p` (linear momentum P = −ηK).
    pub fn momentum(&self, p: &[C64]) -> Result<Herm2> {
        match self {
            Carrier::KleinGordon { .. } => Ok(Herm2::project(kg_matrix(p)?)),
            Carrier::Spinor { triv, .. } => Ok(triv.momentum(&triv.r(p)?)),
        }
    }

    /// A·p: AKA* or ρ(A)z.
    pub fn act(&self, a: &M2, p: &[C64]) -> Result<Vec<C64>> {
        match self {
            Carrier::KleinGordon { .. } => {
                Ok((a * kg_matrix(p)? * a.adjoint()).iter().copied().collect())
            }
            Carrier::Spinor { triv, .. } => Ok(mat_vec(&triv.rho(a), p)),
        }
    }

    /// ρ(A)^{⊗T} on prewave values.
    pub fn rho_value(&self, a: &M2, v: &[C64]) -> Vec<C64> {
        match self {
            Carrier::KleinGordon { .. } => v.to_vec(),
            Carrier::Spinor { triv, degree } => {
                let r = triv.rho(a);
                (0..*degree).fold(v.to_vec(), |acc, s| apply_slot(&r, &acc, *degree, s))
            }
        }
    }

    /// dρ(a)^{⊗T} = Σ over slots of dρ(a) on that slot.
    pub fn d_rho_value(&self, a: &M2, v: &[C64]) -> Vec<C64> {
        match self {
            Carrier::KleinGordon { .. } => vec![cplx(0.0, 0.0); v.len()],
            Carrier::Spinor { triv, degree } => {
                let d = triv.d_rho(a);
                let mut out = vec![cplx(0.0, 0.0); v.len()];
                for s in 0..*degree {
                    for (o, x) in out.iter_mut().zip(apply_slot(&d, v, *degree, s)) {
                        *o += x;
                    }
                }
                out
            }
        }
    }

    fn tensor(&self, p: &[C64]) -> Vec<C64> {
        match self {
            Carrier::KleinGordon { .. } => vec![cplx(1.0, 0.0)],
            Carrier::Spinor { degree, .. } => tensor_power(p, *degree),
        }
    }
}

fn kg_matrix(p: &[C64]) -> Result<M2> {
    if p.len() != 4 {
        return Err(Error::Invalid(
            "a point of ℋᵐ is given by four matrix entries".into(),
        ));
    }
    Ok(M2::from_iterator(p.iter().copied()))
}

fn mat_vec(m: &DMatrix<C64>, v: &[C64]) -> Vec<C64> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)] * v[j]).sum())
        .collect()
}

/// Applies `m` (d×d) to tensor slot `slot` of v ∈ (ℂᵈ)^{⊗t}, first slot most significant.
pub fn apply_slot(m: &DMatrix<C64>, v: &[C64], t: u32, slot: u32) -> Vec<C64> {
    let d = m.nrows();
    let stride = d.pow(t - 1 - slot);
    let mut out = vec![cplx(0.0, 0.0); v.len()];
    for (idx, o) in out.iter_mut().enumerate() {
        let digit = (idx / stride) % d;
        let base = idx - digit * stride;
        for j in 0..d {
            *o += m[(digit, j)] * v[base + j * stride];
        }
    }
    out
}

type PointFn = dyn Fn(&[C64]) -> Result<C64> + Send + Sync;

/// A homogeneous function on a carrier, possibly transformed by δ′.
#[derive(Clone)]
pub struct RepFunction {
    pub carrier: Carrier,
    f: Arc<PointFn>,
}

impl std::fmt::Debug for RepFunction {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        fm.debug_struct("RepFunction")
            .field("carrier", &self.carrier)
            .finish_non_exhaustive()
    }
}

impl RepFunction {
    pub fn new<F>(carrier: Carrier, f: F) -> Self
    where
        F: Fn(&[C64]) -> Result<C64> + Send + Sync + 'static,
    {
        RepFunction {
            carrier,
            f: Arc::new(f),
        }
    }

    /// Scalar function on ℋᵐ given by a profile on the HM chart.
    pub fn klein_gordon(m: f64, eta: f64, profile: Profile) -> Self {
        RepFunction::new(Carrier::KleinGordon { m, eta }, move |p| {
            let k = Herm2::project(kg_matrix(p)?);
            Ok(profile.eval_point(&ChartPoint::Hm(k.four().spatial())))
        })
    }

    pub fn from_section(s: &HomogeneousSection) -> Self {
        let s2 = s.clone();
        RepFunction::new(
            Carrier::Spinor {
                triv: s.triv,
                degree: s.degree,
            },
            move |z| s2.eval(z),
        )
    }

    pub fn eval(&self, p: &[C64]) -> Result<C64> {
        (self.f)(p)
    }

    /// Value at the point over a base point.
    pub fn at(&self, pt: &ChartPoint) -> Result<C64> {
        self.eval(&self.carrier.point_of(pt)?)
    }

    /// ψ_f(H, p) = f(p)·exp(−iπη Tr(K ε H̄ ε))·p^{⊗T}.
    pub fn prewave(&self, h: &Herm2, p: &[C64]) -> Result<Vec<C64>> {
        let k = self.carrier.momentum(p)?;
        let c = self.eval(p)? * plane_phase(self.carrier.eta(), &k, h);
        Ok(self.carrier.tensor(p).into_iter().map(|v| v * c).collect())
    }
}

/// exp(−iπ Tr(P ε H̄ ε)) with P = −ηK.
fn momentum_phase(eta: f64, k: &Herm2, h: &Herm2) -> C64 {
    plane_phase(-eta, k, h)
}

/// δ′(A, H)f: p ↦ f(A⁻¹·p)·exp(−iπ Tr(P(r(p)) ε H̄ ε)).
pub fn rep_on_f(g: &GroupElem, f: &RepFunction) -> RepFunction {
    let (ainv, h, inner, carrier) = (*g.a.inverse(), g.h, f.clone(), f.carrier);
    RepFunction::new(carrier, move |p| {
        let k = carrier.momentum(p)?;
        Ok(inner.eval(&carrier.act(&ainv, p)?)? * momentum_phase(carrier.eta(), &k, &h))
    })
}

/// δ_pw(A, H)ψ_f at (H′, p) through the geometric action:
/// ρ(A)^{⊗T}·ψ_f(A⁻¹(H′ − H)(A*)⁻¹, A⁻¹·p).
pub fn rep_on_prewave(g: &GroupElem, f: &RepFunction, h: &Herm2, p: &[C64]) -> Result<Vec<C64>> {
    let ainv = g.a.inverse();
    let shifted = Herm2::project(h.matrix() - g.h.matrix()).congruence(&ainv);
    let c = &f.carrier;
    let v = f.prewave(&shifted, &c.act(&ainv, p)?)?;
    Ok(c.rho_value(&g.a, &v))
}

/// ψ_{δ′(g)f}(H′, p), the route through the transformed function.
pub fn rep_on_prewave_via_f(
    g: &GroupElem,
    f: &RepFunction,
    h: &Herm2,
    p: &[C64],
) -> Result<Vec<C64>> {
    rep_on_f(g, f).prewave(h, p)
}

/// ⟨f, f′⟩ = ∫ conj(f) f′ over the base, evaluated at the section points.
pub fn inner(f: &RepFunction, f2: &RepFunction, grid: &QuadratureGrid) -> Result<C64> {
    check_grid(f, grid)?;
    let err = std::sync::Mutex::new(None);
    let v = integrate(
        |pt| match product_at(f, f2, pt) {
            Ok(v) => v,
            Err(e) => {
                *err.lock().unwrap() = Some(e);
                cplx(0.0, 0.0)
            }
        },
        grid,
    )?;
    match err.into_inner().unwrap() {
        Some(e) => Err(e),
        None => Ok(v),
    }
}

fn product_at(f: &RepFunction, f2: &RepFunction, pt: &ChartPoint) -> Result<C64> {
    let p = f.carrier.point_of(pt)?;
    let a = f.eval(&p)?;
    if a == cplx(0.0, 0.0) {
        return Ok(a);
    }
    Ok(a.conj() * f2.eval(&p)?)
}

fn check_grid(f: &RepFunction, grid: &QuadratureGrid) -> Result<()> {
    if grid.measure != f.carrier.measure() {
        return Err(Error::Invalid(
            "grid measure does not match the carrier".into(),
        ));
    }
    Ok(())
}

/// ⟨δ′(g)f, δ′(g)f′⟩ through the substitution m = A·y on `grid`, which covers
/// the support of f and f′: Σ wᵢ·(conj(δ′f)·δ′f′)(A·yᵢ)·density(A·yᵢ)|det ∂(A·y)/∂y|.
pub fn inner_transformed(
    g: &GroupElem,
    f: &RepFunction,
    f2: &RepFunction,
    grid: &QuadratureGrid,
) -> Result<C64> {
    check_grid(f, grid)?;
    let (tf, tf2) = (rep_on_f(g, f), rep_on_f(g, f2));
    let m = grid.measure.mass();
    let a = g.a;
    reduce_scalar(grid.len(), |i| {
        let (y, w) = grid.point(i);
        if f.at(&y).map(|v| v == cplx(0.0, 0.0)).unwrap_or(false) {
            return cplx(0.0, 0.0);
        }
        let term = || -> Result<C64> {
            let img = act_point(&a, &y, m)?;
            let v = product_at(&tf, &tf2, &img)?;
            Ok(v * (w * transported_density(&a, &y, &grid.measure, m)?))
        };
        term().unwrap_or(cplx(f64::NAN, 0.0))
    })
}

/// ⟨δ′(g)f, δ′(g)f′⟩ evaluated directly on the nodes of `grid`.
pub fn inner_transformed_direct(
    g: &GroupElem,
    f: &RepFunction,
    f2: &RepFunction,
    grid: &QuadratureGrid,
) -> Result<C64> {
    inner(&rep_on_f(g, f), &rep_on_f(g, f2), grid)
}

/// X_a f(p) = −(pⁱ dρ(a)ʲᵢ ∂f/∂wʲ + p̄ⁱ conj(dρ(a))ʲᵢ ∂f/∂w̄ʲ), with the
/// Wirtinger derivatives from 5-point differences in the real and imaginary
/// directions.
pub fn infinitesimal_x<F>(a: &M2, triv: &Trivialization, f: F, p: &[C64]) -> Result<C64>
where
    F: Fn(&[C64]) -> Result<C64>,
{
    let v = mat_vec(&triv.d_rho(a), p);
    let mut out = cplx(0.0, 0.0);
    for j in 0..p.len() {
        let dx = directional(&f, p, j, cplx(1.0, 0.0))?;
        let dy = directional(&f, p, j, IU)?;
        let d_w = (dx - dy * IU) * 0.5;
        let d_wbar = (dx + dy * IU) * 0.5;
        out -= d_w * v[j] + d_wbar * v[j].conj();
    }
    Ok(out)
}

fn directional<F>(f: &F, p: &[C64], j: usize, dir: C64) -> Result<C64>
where
    F: Fn(&[C64]) -> Result<C64>,
{
    let h = GENERATOR_STEP;
    let at = |s: f64| -> Result<C64> {
        let mut q = p.to_vec();
        q[j] += dir * s;
        f(&q)
    };
    Ok((at(-2.0 * h)? - at(-h)? * 8.0 + at(h)? * 8.0 - at(2.0 * h)?) / (12.0 * h))
}

/// d/dt f(ρ(e^{−ta})p) at t = 0 by a 5-point stencil.
pub fn curve_derivative<F>(a: &M2, triv: &Trivialization, f: F, p: &[C64]) -> Result<C64>
where
    F: Fn(&[C64]) -> Result<C64>,
{
    let h = GENERATOR_STEP;
    let at = |t: f64| -> Result<C64> { f(&mat_vec(&triv.rho(&exp_traceless(a, -t)), p)) };
    Ok((at(-2.0 * h)? - at(-h)? * 8.0 + at(h)? * 8.0 - at(2.0 * h)?) / (12.0 * h))
}

/// (a, h)^θ f(p) = (1/2πi)(X_a f(p) − iπ Tr(P ε h̄ ε) f(p)).
pub fn quantum_operator_f(x: &AlgElem, f: &RepFunction, p: &[C64]) -> Result<C64> {
    let Carrier::Spinor { triv, .. } = f.carrier else {
        return Err(Error::Invalid(
            "the vector-field form needs a linear carrier".into(),
        ));
    };
    let xa = infinitesimal_x(&x.a, &triv, |q| f.eval(q), p)?;
    let k = f.carrier.momentum(p)?;
    let e = eps();
    let pk = k.matrix() * cplx(-triv.eta, 0.0);
    let mult = cplx(0.0, -PI) * (pk * e * conj(&x.h) * e).trace();
    Ok((xa + mult * f.eval(p)?) / cplx(0.0, 2.0 * PI))
}

/// (1/2πi) d/dt (δ′(Exp tX)f)(p) at t = 0 by a 5-point stencil.
pub fn generator_on_f_fd(x: &AlgElem, f: &RepFunction, p: &[C64]) -> Result<C64> {
    let h = GENERATOR_STEP;
    let at = |t: f64| rep_on_f(&alg_exp(x, t), f).eval(p);
    let d = (at(-2.0 * h)? - at(-h)? * 8.0 + at(h)? * 8.0 - at(2.0 * h)?) / (12.0 * h);
    Ok(d / cplx(0.0, 2.0 * PI))
}

/// A field sampled on the regular grid origin + step·(i₁, i₂, i₃, i₄).
#[derive(Clone, Debug, PartialEq)]
pub struct SampledField {
    pub origin: FourVector,
    pub step: f64,
    pub n: [usize; 4],
    pub dim: usize,
    /// Row-major over (i₁, i₂, i₃, i₄), then component.
    pub data: Vec<C64>,
}

impl SampledField {
    pub fn sample<F>(
        origin: FourVector,
        step: f64,
        n: [usize; 4],
        dim: usize,
        field: F,
    ) -> Result<Self>
    where
        F: Fn(FourVector) -> Result<Vec<C64>> + Sync + Send,
    {
        let total = n.iter().product();
        let shape = SampledField {
            origin,
            step,
            n,
            dim,
            data: vec![],
        };
        let vals = par_map(total, |i| field(shape.position(shape.index(i))));
        let mut data = Vec::with_capacity(total * dim);
        for v in vals {
            let v = v?;
            if v.len() != dim {
                return Err(Error::Invalid(format!(
                    "field returned {} components, expected {dim}",
                    v.len()
                )));
            }
            data.extend(v);
        }
        Ok(SampledField { data, ..shape })
    }

    pub fn len(&self) -> usize {
        self.n.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn index(&self, mut i: usize) -> [usize; 4] {
        let mut idx = [0; 4];
        for d in (0..4).rev() {
            idx[d] = i % self.n[d];
            i /= self.n[d];
        }
        idx
    }

    fn flat(&self, idx: [usize; 4]) -> usize {
        idx.iter().zip(&self.n).fold(0, |acc, (i, n)| acc * n + i)
    }

    pub fn position(&self, idx: [usize; 4]) -> FourVector {
        FourVector(std::array::from_fn(|d| {
            self.origin.0[d] + self.step * idx[d] as f64
        }))
    }

    pub fn value(&self, idx: [usize; 4]) -> &[C64] {
        let f = self.flat(idx) * self.dim;
        &self.data[f..f + self.dim]
    }

    /// ∂_μ at an interior node by the 5-point stencil.
    pub fn derivative(&self, idx: [usize; 4], mu: usize) -> Vec<C64> {
        let mut out = vec![cplx(0.0, 0.0); self.dim];
        for (s, wt) in [(-2i64, 1.0), (-1, -8.0), (1, 8.0), (2, -1.0)] {
            let mut j = idx;
            j[mu] = (j[mu] as i64 + s) as usize;
            for (o, v) in out.iter_mut().zip(self.value(j)) {
                *o += v * wt;
            }
        }
        out.iter().map(|v| v / (12.0 * self.step)).collect()
    }
}

/// Quantum operator (1/2πi)dδ_w(X) on a sampled wave, on the interior nodes
/// (a margin of two on every side):
/// (dδ_w(a, h)ψ̃)(x) = dρ(a)^{⊗T}ψ̃(x) − vᵘ(x)∂_μψ̃(x), h(v) = a h(x) + h(x) a* + h.
pub fn wave_operator(x: &AlgElem, carrier: &Carrier, field: &SampledField) -> Result<SampledField> {
    if field.n.iter().any(|&n| n < 5) {
        return Err(Error::Invalid(
            "the 5-point stencil needs at least 5 nodes per axis".into(),
        ));
    }
    if field.dim != carrier.value_dim() {
        return Err(Error::Invalid(
            "field components do not match the carrier".into(),
        ));
    }
    let n = field.n.map(|n| n - 4);
    let origin = field.position([2; 4]);
    let out = SampledField::sample(origin, field.step, n, field.dim, |pos| {
        let idx: [usize; 4] =
            std::array::from_fn(|d| ((pos.0[d] - field.origin.0[d]) / field.step).round() as usize);
        let hx = h_map(pos).matrix();
        let v = Herm2::project(x.a * hx + hx * x.a.adjoint() + *x.h).four();
        let mut acc = carrier.d_rho_value(&x.a, field.value(idx));
        for mu in 0..4 {
            if v.0[mu] != 0.0 {
                for (a, d) in acc.iter_mut().zip(field.derivative(idx, mu)) {
                    *a -= d * v.0[mu];
                }
            }
        }
        Ok(acc.into_iter().map(|c| c / cplx(0.0, 2.0 * PI)).collect())
    })?;
    Ok(out)
}

/// The multiplication route for P̂: the wave of the function Pᵏ(K)·f, with
/// P = −ηK, synthesized on `grid`.
pub fn momentum_weighted_wave(
    k: usize,
    f: &RepFunction,
    grid: &QuadratureGrid,
) -> Result<crate::synth::PlaneWaveSum> {
    check_grid(f, grid)?;
    let eta = f.carrier.eta();
    let c = f.carrier;
    crate::synth::PlaneWaveSum::from_grid(eta, c.value_dim(), grid, |pt, out| {
        let p = c.point_of(pt)?;
        let v = f.eval(&p)?;
        if v == cplx(0.0, 0.0) {
            return Ok(());
        }
        let pk = -eta * c.momentum(&p)?.four().0[k - 1];
        for (o, t) in out.iter_mut().zip(c.tensor(&p)) {
            *o = v * pk * t;
        }
        Ok(())
    })
}

/// The wave ∫ψ_f(h(x), ·) synthesized on `grid`.
pub fn wave_synth(f: &RepFunction, grid: &QuadratureGrid) -> Result<crate::synth::PlaneWaveSum> {
    check_grid(f, grid)?;
    let c = f.carrier;
    crate::synth::PlaneWaveSum::from_grid(c.eta(), c.value_dim(), grid, |pt, out| {
        let p = c.point_of(pt)?;
        let v = f.eval(&p)?;
        if v == cplx(0.0, 0.0) {
            return Ok(());
        }
        for (o, t) in out.iter_mut().zip(c.tensor(&p)) {
            *o = v * t;
        }
        Ok(())
    })
}

/// max |a − b| over the nodes of two fields on the same grid, relative to max |a|.
pub fn relative_difference(a: &SampledField, b: &SampledField) -> Result<f64> {
    if a.n != b.n || a.dim != b.dim {
        return Err(Error::Invalid(
            "fields are sampled on different grids".into(),
        ));
    }
    let scale = max_abs_v(&a.data).max(f64::MIN_POSITIVE);
    let diff = a
        .data
        .iter()
        .zip(&b.data)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max);
    Ok(diff / scale)
}

/// (1/2πi) d/dt (δ_w(Exp tX)ψ̃)(x) at t = 0, with δ_w(A, H)ψ̃(x) =
/// ρ(A)^{⊗T}ψ̃((A, H)⁻¹·x), by a 5-point stencil.
pub fn wave_generator_fd<F>(
    x: &AlgElem,
    carrier: &Carrier,
    field: F,
    pos: FourVector,
) -> Result<Vec<C64>>
where
    F: Fn(FourVector) -> Result<Vec<C64>>,
{
    let h = GENERATOR_STEP;
    let at = |t: f64| -> Result<Vec<C64>> {
        let g = alg_exp(x, t);
        Ok(carrier.rho_value(&g.a, &field(g.inv().act(pos))?))
    };
    let (a, b, c, d) = (at(-2.0 * h)?, at(-h)?, at(h)?, at(2.0 * h)?);
    Ok((0..a.len())
        .map(|i| (a[i] - b[i] * 8.0 + c[i] * 8.0 - d[i]) / (12.0 * h) / cplx(0.0, 2.0 * PI))
        .collect())
}
