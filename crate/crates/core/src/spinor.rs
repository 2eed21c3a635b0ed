//! The group SL(2,C) ⊕ H(2), its Lie algebra and dual, and the canonical
//! dynamical variables.
//!
//! Points of Minkowski space are hermitian 2×2 matrices through
//! `h(x) = x⁴ I + Σ xⁱ σᵢ`, so that `det h(x) = ⟨x,x⟩` with signature (+,−,−,−)
//! in the order (x⁴; x¹,x²,x³).

use crate::error::{Error, Result};
use nalgebra::{Matrix2, Vector2};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::ops::Deref;

pub type C64 = Complex64;
pub type M2 = Matrix2<C64>;
pub type V2 = Vector2<C64>;
pub type Vec3 = [f64; 3];

pub const IU: C64 = C64::new(0.0, 1.0);
const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

pub fn cplx(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn id2() -> M2 {
    M2::identity()
}

/// Pauli matrix σ_k for k ∈ {1,2,3}.
pub fn sigma(k: usize) -> M2 {
    match k {
        1 => M2::new(ZERO, ONE, ONE, ZERO),
        2 => M2::new(ZERO, -IU, IU, ZERO),
        3 => M2::new(ONE, ZERO, ZERO, -ONE),
        _ => panic!("Pauli index must be 1, 2 or 3, got {k}"),
    }
}

/// ε = iσ₂ = [[0,1],[−1,0]].
pub fn eps() -> M2 {
    M2::new(ZERO, ONE, -ONE, ZERO)
}

/// Entrywise complex conjugate.
pub fn conj(m: &M2) -> M2 {
    m.map(|z| z.conj())
}

pub fn conj_v(v: &V2) -> V2 {
    v.map(|z| z.conj())
}

pub fn max_abs(m: &M2) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn max_abs_v(v: &[C64]) -> f64 {
    v.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// `−ε M̄ ε`, the adjugate of M; equal to `det(M) M⁻¹`.
pub fn adjugate(m: &M2) -> M2 {
    M2::new(m[(1, 1)], -m[(0, 1)], -m[(1, 0)], m[(0, 0)])
}

pub fn dot(a: &Vec3, b: &Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross(a: &Vec3, b: &Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn norm3(a: &Vec3) -> f64 {
    dot(a, a).sqrt()
}

pub fn add3(a: &Vec3, b: &Vec3) -> Vec3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub fn sub3(a: &Vec3, b: &Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn scale3(s: f64, a: &Vec3) -> Vec3 {
    [s * a[0], s * a[1], s * a[2]]
}

/// A point of ℝ⁴ stored as (x¹, x², x³, x⁴); x⁴ is the time coordinate.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FourVector(pub [f64; 4]);

impl FourVector {
    pub const fn new(x1: f64, x2: f64, x3: f64, x4: f64) -> Self {
        FourVector([x1, x2, x3, x4])
    }

    pub fn from_parts(v: Vec3, x4: f64) -> Self {
        FourVector([v[0], v[1], v[2], x4])
    }

    pub fn spatial(&self) -> Vec3 {
        [self.0[0], self.0[1], self.0[2]]
    }

    pub fn x4(&self) -> f64 {
        self.0[3]
    }

    /// ⟨x,y⟩ = x⁴y⁴ − x¹y¹ − x²y² − x³y³.
    pub fn minkowski(&self, o: &FourVector) -> f64 {
        self.0[3] * o.0[3] - self.0[0] * o.0[0] - self.0[1] * o.0[1] - self.0[2] * o.0[2]
    }

    pub fn square(&self) -> f64 {
        self.minkowski(self)
    }

    pub fn add(&self, o: &FourVector) -> FourVector {
        FourVector(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }

    pub fn sub(&self, o: &FourVector) -> FourVector {
        FourVector(std::array::from_fn(|i| self.0[i] - o.0[i]))
    }

    pub fn scale(&self, s: f64) -> FourVector {
        FourVector(self.0.map(|x| s * x))
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |a, x| a.max(x.abs()))
    }
}

/// Tolerances for invariant checks on construction.
#[derive(Clone, Copy, Debug)]
pub struct Tol {
    /// Entrywise tolerance, scaled by `max(1, ‖M‖)`.
    pub matrix: f64,
}

impl Default for Tol {
    fn default() -> Self {
        Tol { matrix: 1e-12 }
    }
}

impl Tol {
    fn bound(&self, m: &M2) -> f64 {
        self.matrix * max_abs(m).max(1.0)
    }
}

/// Hermitian 2×2 matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Herm2(M2);

impl Herm2 {
    /// Accepts `m` when it is hermitian within tolerance and stores its
    /// hermitian part.
    pub fn new(m: M2, tol: &Tol) -> Result<Self> {
        let dev = max_abs(&(m - m.adjoint()));
        if dev > tol.bound(&m) {
            return Err(Error::NotHermitian(dev));
        }
        Ok(Herm2::project(m))
    }

    /// Hermitian part (M + M*)/2.
    pub fn project(m: M2) -> Self {
        Herm2((m + m.adjoint()).scale(0.5))
    }

    pub fn zero() -> Self {
        Herm2(M2::zeros())
    }

    pub fn identity() -> Self {
        Herm2(M2::identity())
    }

    pub fn from_four(x: FourVector) -> Self {
        h_map(x)
    }

    pub fn matrix(&self) -> M2 {
        self.0
    }

    pub fn four(&self) -> FourVector {
        let m = &self.0;
        FourVector::new(
            m[(1, 0)].re,
            m[(1, 0)].im,
            0.5 * (m[(0, 0)].re - m[(1, 1)].re),
            0.5 * (m[(0, 0)].re + m[(1, 1)].re),
        )
    }

    pub fn det(&self) -> f64 {
        self.0.determinant().re
    }

    pub fn trace(&self) -> f64 {
        self.0.trace().re
    }

    /// A K A* for any 2×2 A.
    pub fn congruence(&self, a: &M2) -> Herm2 {
        Herm2::project(a * self.0 * a.adjoint())
    }
}

impl Deref for Herm2 {
    type Target = M2;
    fn deref(&self) -> &M2 {
        &self.0
    }
}

/// Unimodular 2×2 complex matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SL2(M2);

impl SL2 {
    /// Accepts `m` when `|det m − 1|` is within tolerance and rescales it to
    /// unit determinant.
    pub fn new(m: M2, tol: &Tol) -> Result<Self> {
        let d = m.determinant();
        let dev = (d - ONE).norm();
        if dev > tol.matrix * max_abs(&m).powi(2).max(1.0) {
            return Err(Error::NotUnimodular(dev));
        }
        Ok(SL2::project(m))
    }

    pub(crate) fn project(m: M2) -> Self {
        let d = m.determinant();
        SL2(m.unscale_c(d.sqrt()))
    }

    pub fn identity() -> Self {
        SL2(M2::identity())
    }

    pub fn matrix(&self) -> M2 {
        self.0
    }

    pub fn inverse(&self) -> SL2 {
        SL2(adjugate(&self.0))
    }

    /// (A*)⁻¹.
    pub fn adjoint_inverse(&self) -> M2 {
        adjugate(&self.0).adjoint()
    }
}

impl Deref for SL2 {
    type Target = M2;
    fn deref(&self) -> &M2 {
        &self.0
    }
}

trait UnscaleC {
    fn unscale_c(self, s: C64) -> Self;
}

impl UnscaleC for M2 {
    fn unscale_c(self, s: C64) -> Self {
        self.map(|z| z / s)
    }
}

/// h(x) = x⁴ I + Σ xⁱ σᵢ.
pub fn h_map(x: FourVector) -> Herm2 {
    let [x1, x2, x3, x4] = x.0;
    Herm2(M2::new(
        cplx(x4 + x3, 0.0),
        cplx(x1, -x2),
        cplx(x1, x2),
        cplx(x4 - x3, 0.0),
    ))
}

/// h(v, 0) as a plain matrix.
pub fn h3(v: &Vec3) -> M2 {
    h_map(FourVector::from_parts(*v, 0.0)).matrix()
}

/// Inverse of [`h_map`]; rejects non-hermitian input.
pub fn h_inv(m: &M2, tol: &Tol) -> Result<FourVector> {
    Ok(Herm2::new(*m, tol)?.four())
}

/// An element (A, H) of SL(2,C) ⊕ H(2).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GroupElem {
    pub a: SL2,
    pub h: Herm2,
}

impl GroupElem {
    pub fn new(a: M2, h: M2, tol: &Tol) -> Result<Self> {
        Ok(GroupElem {
            a: SL2::new(a, tol)?,
            h: Herm2::new(h, tol)?,
        })
    }

    pub fn identity() -> Self {
        GroupElem {
            a: SL2::identity(),
            h: Herm2::zero(),
        }
    }

    pub fn translation(h: Herm2) -> Self {
        GroupElem {
            a: SL2::identity(),
            h,
        }
    }

    pub fn lorentz(a: SL2) -> Self {
        GroupElem {
            a,
            h: Herm2::zero(),
        }
    }

    /// (A,H)(B,K) = (AB, AKA* + H).
    pub fn mul(&self, o: &GroupElem) -> GroupElem {
        GroupElem {
            a: SL2::project(*self.a * *o.a),
            h: Herm2::project(*self.a * *o.h * self.a.adjoint() + *self.h),
        }
    }

    /// (A,H)⁻¹ = (A⁻¹, −A⁻¹ H (A*)⁻¹).
    pub fn inv(&self) -> GroupElem {
        let ai = self.a.inverse();
        GroupElem {
            h: Herm2::project(-(*ai * *self.h * ai.adjoint())),
            a: ai,
        }
    }

    /// A K A* + H on hermitian matrices.
    pub fn act_herm(&self, k: &M2) -> M2 {
        *self.a * k * self.a.adjoint() + *self.h
    }

    /// h⁻¹(A h(x) A* + H).
    pub fn act(&self, x: FourVector) -> FourVector {
        Herm2::project(self.act_herm(&h_map(x))).four()
    }

    pub fn max_abs_diff(&self, o: &GroupElem) -> f64 {
        max_abs(&(*self.a - *o.a)).max(max_abs(&(*self.h - *o.h)))
    }
}

pub fn group_mul(g1: &GroupElem, g2: &GroupElem) -> GroupElem {
    g1.mul(g2)
}

pub fn group_inv(g: &GroupElem) -> GroupElem {
    g.inv()
}

pub fn act_on_spacetime(g: &GroupElem, x: FourVector) -> FourVector {
    g.act(x)
}

/// An element (a, h) of sl(2,C) ⊕ H(2).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlgElem {
    pub a: M2,
    pub h: Herm2,
}

fn check_traceless(a: M2, tol: &Tol) -> Result<M2> {
    let t = a.trace();
    if t.norm() > tol.bound(&a) {
        return Err(Error::NotTraceless(t.norm()));
    }
    Ok(a - M2::identity().scale(1.0) * (t * 0.5))
}

impl AlgElem {
    pub fn new(a: M2, h: M2, tol: &Tol) -> Result<Self> {
        Ok(AlgElem {
            a: check_traceless(a, tol)?,
            h: Herm2::new(h, tol)?,
        })
    }

    pub fn zero() -> Self {
        AlgElem {
            a: M2::zeros(),
            h: Herm2::zero(),
        }
    }

    /// Translation generators: P^k = (0, −σ_k) for k = 1..3, P⁴ = (0, I).
    pub fn p(k: usize) -> Self {
        let h = if k == 4 { id2() } else { -sigma(k) };
        AlgElem {
            a: M2::zeros(),
            h: Herm2(h),
        }
    }

    /// Rotation generators l^k = (iσ_k/2, 0).
    pub fn l(k: usize) -> Self {
        AlgElem {
            a: sigma(k) * (IU * 0.5),
            h: Herm2::zero(),
        }
    }

    /// Boost generators g^k = (σ_k/2, 0).
    pub fn g(k: usize) -> Self {
        AlgElem {
            a: sigma(k) * cplx(0.5, 0.0),
            h: Herm2::zero(),
        }
    }

    pub fn add(&self, o: &AlgElem) -> AlgElem {
        AlgElem {
            a: self.a + o.a,
            h: Herm2(*self.h + *o.h),
        }
    }

    pub fn scale(&self, s: f64) -> AlgElem {
        AlgElem {
            a: self.a.scale(s),
            h: Herm2(self.h.scale(s)),
        }
    }

    /// [(a,k),(a',k')] = ([a,a'], a k' + k' a* − a' k − k a'*).
    pub fn bracket(&self, o: &AlgElem) -> AlgElem {
        let (a, k, b, l) = (self.a, *self.h, o.a, *o.h);
        AlgElem {
            a: a * b - b * a,
            h: Herm2::project(a * l + l * a.adjoint() - b * k - k * b.adjoint()),
        }
    }

    pub fn max_abs_diff(&self, o: &AlgElem) -> f64 {
        max_abs(&(self.a - o.a)).max(max_abs(&(*self.h - *o.h)))
    }
}

/// Adjoint action Ad_{(A,H)}(a,k) = (b, A k A* − b H − H b*) with b = A a A⁻¹.
pub fn adjoint(g: &GroupElem, x: &AlgElem) -> AlgElem {
    let b = *g.a * x.a * *g.a.inverse();
    let hh = *g.h;
    AlgElem {
        a: b,
        h: Herm2::project(*g.a * *x.h * g.a.adjoint() - b * hh - hh * b.adjoint()),
    }
}

/// A dual element {a, k}, paired with the algebra through [`pairing`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoForm {
    pub a: M2,
    pub k: Herm2,
}

impl CoForm {
    pub fn new(a: M2, k: M2, tol: &Tol) -> Result<Self> {
        Ok(CoForm {
            a: check_traceless(a, tol)?,
            k: Herm2::new(k, tol)?,
        })
    }

    pub fn zero() -> Self {
        CoForm {
            a: M2::zeros(),
            k: Herm2::zero(),
        }
    }

    pub fn norm(&self) -> f64 {
        max_abs(&self.a).max(max_abs(&self.k))
    }

    pub fn max_abs_diff(&self, o: &CoForm) -> f64 {
        max_abs(&(self.a - o.a)).max(max_abs(&(*self.k - *o.k)))
    }

    pub fn add(&self, o: &CoForm) -> CoForm {
        CoForm {
            a: self.a + o.a,
            k: Herm2(*self.k + *o.k),
        }
    }

    pub fn scale(&self, s: f64) -> CoForm {
        CoForm {
            a: self.a.scale(s),
            k: Herm2(self.k.scale(s)),
        }
    }
}

/// ⟨{a,k},(b,l)⟩ = ½ Tr(k ε l̄ ε) − 2 Re Tr(a b).
pub fn pairing(alpha: &CoForm, x: &AlgElem) -> f64 {
    let e = eps();
    let t1 = (*alpha.k * e * conj(&x.h) * e).trace().re * 0.5;
    let t2 = (alpha.a * x.a).trace().re * 2.0;
    t1 - t2
}

/// Ad*_{(A,H)}{a,k} = {A a A⁻¹ + ¼(A k A* ε H̄ ε − H ε (A k A*)‾ ε), A k A*}.
pub fn coadjoint(g: &GroupElem, alpha: &CoForm) -> CoForm {
    let e = eps();
    let a = *g.a;
    let aka = a * *alpha.k * a.adjoint();
    let hh = *g.h;
    let corr = (aka * e * conj(&hh) * e - hh * e * conj(&aka) * e).scale(0.25);
    let new_a = a * alpha.a * *g.a.inverse() + corr;
    CoForm {
        a: new_a - id2() * (new_a.trace() * 0.5),
        k: Herm2::project(aka),
    }
}

/// Linear momentum P, angular momentum l and boost momentum g of a dual element.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DynVars {
    pub p: FourVector,
    pub l: Vec3,
    pub g: Vec3,
}

impl DynVars {
    /// Inverse of [`dyn_vars`]: {a,k} = {−½ h(g,0) + (i/2) h(l,0), −h(P)}.
    pub fn to_coform(&self) -> CoForm {
        let a = -h3(&self.g).scale(0.5) + h3(&self.l) * (IU * 0.5);
        CoForm {
            a,
            k: Herm2(-h_map(self.p).matrix()),
        }
    }

    pub fn max_abs_diff(&self, o: &DynVars) -> f64 {
        let mut m = self.p.sub(&o.p).max_abs();
        for i in 0..3 {
            m = m
                .max((self.l[i] - o.l[i]).abs())
                .max((self.g[i] - o.g[i]).abs());
        }
        m
    }
}

/// h(P) = −k, h(l,0) = i(a* − a), h(g,0) = −(a + a*).
pub fn dyn_vars(alpha: &CoForm) -> DynVars {
    let a = alpha.a;
    let p = Herm2::project(-*alpha.k).four();
    let l = Herm2::project((a.adjoint() - a) * IU).four();
    let g = Herm2::project(-(a + a.adjoint())).four();
    DynVars {
        p,
        l: l.spatial(),
        g: g.spatial(),
    }
}

/// Pauli–Lubanski vector: h(W) = i(a k − k a*).
pub fn pauli_lubanski(alpha: &CoForm) -> FourVector {
    let a = alpha.a;
    let k = *alpha.k;
    Herm2::project((a * k - k * a.adjoint()) * IU).four()
}

/// (|P|, |W|) = (det k, det h(W)).
pub fn orbit_invariants(alpha: &CoForm) -> (f64, f64) {
    (alpha.k.det(), pauli_lubanski(alpha).square())
}

/// sinh(z)/z.
pub fn shc(z: C64) -> C64 {
    if z.norm() < 1e-4 {
        let z2 = z * z;
        ONE + z2 / 6.0 + z2 * z2 / 120.0
    } else {
        z.sinh() / z
    }
}

fn shc_r(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        1.0 + x * x / 6.0
    } else {
        x.sinh() / x
    }
}

fn sinc_r(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

/// (cosh x − 1)/x.
fn chm_r(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        2.0 * (0.5 * x).sinh().powi(2) / x
    }
}

/// (1 − cos x)/x.
fn cm_r(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        2.0 * (0.5 * x).sin().powi(2) / x
    }
}

/// e^{ta} for traceless a, from a² = −det(a) I.
pub fn exp_traceless(a: &M2, t: f64) -> M2 {
    let lam = (-a.determinant()).sqrt();
    let z = lam * t;
    id2() * z.cosh() + a * (shc(z) * t)
}

/// ∫₀ᵗ e^{sa} h e^{sa*} ds for traceless a.
pub fn exp_integral(a: &M2, h: &M2, t: f64) -> M2 {
    let lam = (-a.determinant()).sqrt();
    if (lam * t).norm() < 1e-2 {
        return exp_integral_gauss(a, h, t);
    }
    // e^{sa} = c(s) I + S(s) a with c = cosh(sλ), S = sinh(sλ)/λ.
    let (al, be) = (lam.re, lam.im);
    let i_cc = 0.5 * t * (shc_r(2.0 * al * t) + sinc_r(2.0 * be * t));
    let i_ss = 0.5 * t * (shc_r(2.0 * al * t) - sinc_r(2.0 * be * t)) / lam.norm_sqr();
    let i_cs = cplx(chm_r(2.0 * al * t), -cm_r(2.0 * be * t)) * (0.5 * t) / lam.conj();
    let ad = a.adjoint();
    h.scale(i_cc) + (h * ad) * i_cs + (a * h) * i_cs.conj() + (a * h * ad).scale(i_ss)
}

/// 16-point Gauss–Legendre evaluation, exact to rounding when the exponent
/// `sλ` stays small (the integrand is then a low-degree polynomial in s up to
/// negligible terms).
fn exp_integral_gauss(a: &M2, h: &M2, t: f64) -> M2 {
    let (nodes, weights) = crate::quad::gauss_legendre_on(16, 0.0, t);
    let mut acc = M2::zeros();
    for (s, w) in nodes.into_iter().zip(weights) {
        let e = exp_traceless(a, s);
        acc += (e * h * e.adjoint()).scale(w);
    }
    acc
}

/// Exp(t(a,h)) = (e^{ta}, ∫₀ᵗ e^{sa} h e^{sa*} ds).
pub fn alg_exp(x: &AlgElem, t: f64) -> GroupElem {
    GroupElem {
        a: SL2::project(exp_traceless(&x.a, t)),
        h: Herm2::project(exp_integral(&x.a, &x.h, t)),
    }
}
