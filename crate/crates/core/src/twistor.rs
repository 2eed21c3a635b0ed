//! Contact and symplectic structures: the Klein-Gordon and Dirac contact
//! forms as pullbacks of left-invariant forms, twistor space ℂ⁴ with the
//! hermitian form Φ = Re z*w, the representation μ₁, the map Π onto the
//! massless orbit, and local expressions of its symplectic form.

use crate::error::{Error, Result};
use crate::massless::MasslessSpec;
use crate::spinor::*;
use nalgebra::{DMatrix, Matrix4, Vector4};
use serde::{Deserialize, Serialize};

/// Default step of the 5-point stencils along curves in the group.
pub const CURVE_STEP: f64 = 1e-3;
/// Default relative step of the exterior-derivative differences.
pub const EXTERIOR_STEP: f64 = 1e-5;

/// A twistor Z = (w, z), ordered (w¹, w², z¹, z²).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Twistor {
    pub w: V2,
    pub z: V2,
}

impl Twistor {
    pub fn new(w: V2, z: V2) -> Result<Self> {
        if w.norm() == 0.0 && z.norm() == 0.0 {
            return Err(Error::Degenerate("the zero twistor".into()));
        }
        Ok(Twistor { w, z })
    }

    /// q = (0, 2ν, 0, 1).
    pub fn base(nu: f64) -> Self {
        let o = cplx(0.0, 0.0);
        Twistor {
            w: V2::new(o, cplx(2.0 * nu, 0.0)),
            z: V2::new(o, cplx(1.0, 0.0)),
        }
    }

    pub fn from_components(c: [C64; 4]) -> Self {
        Twistor {
            w: V2::new(c[0], c[1]),
            z: V2::new(c[2], c[3]),
        }
    }

    pub fn components(&self) -> [C64; 4] {
        [self.w[0], self.w[1], self.z[0], self.z[1]]
    }

    pub fn scale(&self, s: C64) -> Twistor {
        Twistor {
            w: self.w * s,
            z: self.z * s,
        }
    }

    pub fn sub(&self, o: &Twistor) -> Twistor {
        Twistor {
            w: self.w - o.w,
            z: self.z - o.z,
        }
    }

    pub fn max_abs(&self) -> f64 {
        max_abs_v(&self.components())
    }

    pub fn phi(&self) -> f64 {
        phi_form(self)
    }
}

/// Φ(Z) = Re z*w.
pub fn phi_form(z: &Twistor) -> f64 {
    (z.z.adjoint() * z.w)[0].re
}

/// μ₁(A, H) = [[A, −iH(A*)⁻¹], [0, (A*)⁻¹]].
pub fn mu1_matrix(g: &GroupElem) -> Matrix4<C64> {
    let ai = g.a.adjoint_inverse();
    let top = -(*g.h * ai) * IU;
    let mut m = Matrix4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            m[(i, j)] = g.a[(i, j)];
            m[(i, j + 2)] = top[(i, j)];
            m[(i + 2, j + 2)] = ai[(i, j)];
        }
    }
    m
}

pub fn mu1_act(g: &GroupElem, z: &Twistor) -> Twistor {
    let v = mu1_matrix(g) * Vector4::from(z.components());
    Twistor::from_components([v[0], v[1], v[2], v[3]])
}

/// dμ₁(a, h) = [[a, −ih], [0, −a*]] applied to Z.
pub fn d_mu1(x: &AlgElem, z: &Twistor) -> Twistor {
    Twistor {
        w: x.a * z.w - (*x.h * z.z) * IU,
        z: -(x.a.adjoint() * z.z),
    }
}

fn check_sign(spec: &MasslessSpec, phi: f64) -> Result<()> {
    if phi * spec.nu() <= 0.0 {
        return Err(Error::OffDomain(format!(
            "Φ = {phi:e} does not have the sign of ν = {:e}",
            spec.nu()
        )));
    }
    Ok(())
}

/// The group element (A(w,z), H(w,z)) with μ₁(A, H) q = √(2ν/Φ)·Z:
/// A = √(2ν/Φ)(εz̄ | (w − iγz)/2ν), H = −γI, γ = Im(z*w)/|z|².
pub fn standardize(spec: &MasslessSpec, z: &Twistor) -> Result<GroupElem> {
    let phi = phi_form(z);
    check_sign(spec, phi)?;
    let zz = z.z.norm_squared();
    if zz == 0.0 {
        return Err(Error::Degenerate("z = 0".into()));
    }
    let nu = spec.nu();
    let gamma = (z.z.adjoint() * z.w)[0].im / zz;
    let c = (2.0 * nu / phi).sqrt();
    let col1 = eps() * conj_v(&z.z) * cplx(c, 0.0);
    let col2 = (z.w - z.z * cplx(0.0, gamma)) * cplx(c / (2.0 * nu), 0.0);
    let a = M2::new(col1[0], col2[0], col1[1], col2[1]);
    Ok(GroupElem {
        a: SL2::project(a),
        h: Herm2::project(id2() * cplx(-gamma, 0.0)),
    })
}

/// Π(Z) = (2νη/Φ){(i/4)(wz* + ε(zw*)‾ε), −ε(zz*)‾ε}.
pub fn pi_map(spec: &MasslessSpec, z: &Twistor) -> Result<CoForm> {
    let phi = phi_form(z);
    check_sign(spec, phi)?;
    let e = eps();
    let c = 2.0 * spec.nu() * spec.eta / phi;
    let wz = z.w * z.z.adjoint();
    let a = (wz + e * conj(&wz.adjoint()) * e) * (IU * (0.25 * c));
    let k = -(e * conj(&(z.z * z.z.adjoint())) * e) * cplx(c, 0.0);
    Ok(CoForm {
        a: a - id2() * (a.trace() * 0.5),
        k: Herm2::project(k),
    })
}

/// Dynamical variables of the massless orbit as functions on twistor space.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwistorDynVars {
    pub p: FourVector,
    pub l: Vec3,
    pub g: Vec3,
    pub w: FourVector,
}

/// P, l, g and W = −ηνP in closed form.
pub fn twistor_dynvars(spec: &MasslessSpec, z: &Twistor) -> Result<TwistorDynVars> {
    let phi = phi_form(z);
    if phi == 0.0 {
        return Err(Error::Degenerate("Φ = 0".into()));
    }
    let (eta, nu) = (spec.eta, spec.nu());
    let e = eps();
    let tilde = |m: M2| e * conj(&m) * e;
    let zw = z.z * z.w.adjoint();
    let wz = z.w * z.z.adjoint();
    let p = Herm2::project(tilde(z.z * z.z.adjoint()) * cplx(2.0 * eta * nu / phi, 0.0)).four();
    let sym = zw + wz;
    let l = Herm2::project((sym + tilde(sym)) * cplx(eta * nu / (2.0 * phi), 0.0)).four();
    let anti = zw - wz;
    let g = Herm2::project((anti - tilde(anti)) * cplx(0.0, eta * nu / (2.0 * phi))).four();
    Ok(TwistorDynVars {
        p,
        l: l.spatial(),
        g: g.spatial(),
        w: p.scale(-eta * nu),
    })
}

/// ω₀(V) = (iην/2Φ) Σⱼ (zʲ dw̄ʲ + wʲ dz̄ʲ − z̄ʲ dwʲ − w̄ʲ dzʲ)(V).
pub fn omega0(spec: &MasslessSpec, z: &Twistor, v: &Twistor) -> f64 {
    let s: C64 = (0..2)
        .map(|j| z.z[j] * v.w[j].conj() + z.w[j] * v.z[j].conj())
        .sum();
    let phi = phi_form(z);
    -spec.eta * spec.nu() * s.im / phi
}

/// Tangent at t = 0 of t ↦ μ₁(Exp(−tX))Z, by a 5-point stencil.
pub fn generator_tangent_fd(x: &AlgElem, z: &Twistor, step: f64) -> Twistor {
    let f = |t: f64| {
        let v = mu1_act(&alg_exp(x, -t), z).components();
        v.iter().flat_map(|c| [c.re, c.im]).collect::<Vec<f64>>()
    };
    let d = stencil5(f, step);
    Twistor::from_components([0, 1, 2, 3].map(|i| cplx(d[2 * i], d[2 * i + 1])))
}

/// ω₀ evaluated on the infinitesimal generator of X at Z (finite-difference tangent).
pub fn omega0_pair(spec: &MasslessSpec, z: &Twistor, x: &AlgElem) -> f64 {
    omega0(spec, z, &generator_tangent_fd(x, z, CURVE_STEP))
}

/// 5-point central derivative at 0 of a vector-valued function of one variable.
pub fn stencil5<F: FnMut(f64) -> Vec<f64>>(mut f: F, h: f64) -> Vec<f64> {
    let (a, b, c, d) = (f(-2.0 * h), f(-h), f(h), f(2.0 * h));
    (0..a.len())
        .map(|i| (a[i] - 8.0 * b[i] + 8.0 * c[i] - d[i]) / (12.0 * h))
        .collect()
}

/// Value at the identity of the left-invariant form α̃ on the tangent vector
/// ∂/∂rⱼ of a section σ: ⟨α, d/ds σ(r)⁻¹σ(r + s eⱼ)|₀⟩ for every j.
pub fn left_invariant_pullback<S>(
    alpha: &CoForm,
    section: S,
    r: &[f64],
    step: f64,
) -> Result<Vec<f64>>
where
    S: Fn(&[f64]) -> Result<GroupElem>,
{
    let base_inv = section(r)?.inv();
    let mut out = Vec::with_capacity(r.len());
    for j in 0..r.len() {
        let mut err = None;
        let d = stencil5(
            |s| {
                let mut rr = r.to_vec();
                rr[j] += s;
                match section(&rr) {
                    Ok(g) => {
                        let c = base_inv.mul(&g);
                        c.a.iter()
                            .chain(c.h.matrix().iter())
                            .flat_map(|z| [z.re, z.im])
                            .collect()
                    }
                    Err(e) => {
                        err = Some(e);
                        vec![0.0; 16]
                    }
                }
            },
            step,
        );
        if let Some(e) = err {
            return Err(e);
        }
        let m =
            |o: usize| M2::from_fn(|i, k| cplx(d[o + 2 * (2 * k + i)], d[o + 2 * (2 * k + i) + 1]));
        let a = m(0);
        let x = AlgElem {
            a: a - id2() * (a.trace() * 0.5),
            h: Herm2::project(m(8)),
        };
        out.push(pairing(alpha, &x));
    }
    Ok(out)
}

/// A 2-form as the antisymmetric matrix Mᵢⱼ = Ω(∂ᵢ, ∂ⱼ).
pub type TwoForm = Vec<Vec<f64>>;

/// dθ for a 1-form given by its coefficient function, by central differences
/// with one Richardson extrapolation.
pub fn exterior_derivative<F>(theta: F, r: &[f64], step: f64) -> Result<TwoForm>
where
    F: Fn(&[f64]) -> Result<Vec<f64>>,
{
    let n = r.len();
    let mut jac = vec![vec![0.0; n]; n];
    for i in 0..n {
        let h = step * r[i].abs().max(1.0);
        let central = |h: f64| -> Result<Vec<f64>> {
            let mut p = r.to_vec();
            let mut m = r.to_vec();
            p[i] += h;
            m[i] -= h;
            let (fp, fm) = (theta(&p)?, theta(&m)?);
            Ok(fp
                .iter()
                .zip(&fm)
                .map(|(a, b)| (a - b) / (2.0 * h))
                .collect())
        };
        let (d1, d2) = (central(h)?, central(0.5 * h)?);
        for j in 0..n {
            jac[i][j] = (4.0 * d2[j] - d1[j]) / 3.0;
        }
    }
    Ok((0..n)
        .map(|i| (0..n).map(|j| jac[i][j] - jac[j][i]).collect())
        .collect())
}

/// max |∂ᵢMⱼₖ + ∂ⱼMₖᵢ + ∂ₖMᵢⱼ|, the coefficients of dM, by central differences
/// with one Richardson extrapolation.
pub fn closedness_residual<F>(form: F, r: &[f64], step: f64) -> Result<f64>
where
    F: Fn(&[f64]) -> Result<TwoForm>,
{
    let n = r.len();
    let mut grad = Vec::with_capacity(n);
    for i in 0..n {
        let h = step * r[i].abs().max(1.0);
        let central = |h: f64| -> Result<TwoForm> {
            let mut p = r.to_vec();
            let mut m = r.to_vec();
            p[i] += h;
            m[i] -= h;
            let (fp, fm) = (form(&p)?, form(&m)?);
            Ok((0..n)
                .map(|a| (0..n).map(|b| (fp[a][b] - fm[a][b]) / (2.0 * h)).collect())
                .collect())
        };
        let (d1, d2) = (central(h)?, central(0.5 * h)?);
        grad.push(
            (0..n)
                .map(|a| {
                    (0..n)
                        .map(|b| (4.0 * d2[a][b] - d1[a][b]) / 3.0)
                        .collect::<Vec<f64>>()
                })
                .collect::<Vec<_>>(),
        );
    }
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                worst = worst.max((grad[i][j][k] + grad[j][k][i] + grad[k][i][j]).abs());
            }
        }
    }
    Ok(worst)
}

/// Forms on ℝⁿ (n ≤ 16) stored as coefficients indexed by the bitmask of
/// their basis monomial dx^{i₁}∧…∧dx^{i_k}, i₁ < … < i_k.
#[derive(Clone, Debug, PartialEq)]
pub struct Form {
    pub n: usize,
    pub coeffs: Vec<f64>,
}

impl Form {
    pub fn zero(n: usize) -> Self {
        Form {
            n,
            coeffs: vec![0.0; 1 << n],
        }
    }

    pub fn one(n: usize) -> Self {
        let mut f = Form::zero(n);
        f.coeffs[0] = 1.0;
        f
    }

    pub fn from_one_form(c: &[f64]) -> Self {
        let mut f = Form::zero(c.len());
        for (i, v) in c.iter().enumerate() {
            f.coeffs[1 << i] = *v;
        }
        f
    }

    pub fn from_two_form(m: &TwoForm) -> Self {
        let n = m.len();
        let mut f = Form::zero(n);
        for i in 0..n {
            for j in i + 1..n {
                f.coeffs[(1 << i) | (1 << j)] = m[i][j];
            }
        }
        f
    }

    pub fn wedge(&self, o: &Form) -> Form {
        let mut out = Form::zero(self.n);
        for (ma, a) in self.coeffs.iter().enumerate() {
            if *a == 0.0 {
                continue;
            }
            for (mb, b) in o.coeffs.iter().enumerate() {
                if *b == 0.0 || ma & mb != 0 {
                    continue;
                }
                // Sign of sorting the concatenated monomials: pairs (i ∈ a, j ∈ b) with i > j.
                let mut swaps = 0;
                for j in 0..self.n {
                    if mb >> j & 1 == 1 {
                        swaps += (ma >> (j + 1)).count_ones();
                    }
                }
                let s = if swaps % 2 == 0 { 1.0 } else { -1.0 };
                out.coeffs[ma | mb] += s * a * b;
            }
        }
        out
    }

    pub fn power(&self, k: usize) -> Form {
        (0..k).fold(Form::one(self.n), |acc, _| acc.wedge(self))
    }

    /// Coefficient of dx¹∧…∧dxⁿ.
    pub fn top(&self) -> f64 {
        self.coeffs[(1 << self.n) - 1]
    }
}

/// Coefficient of θ∧(dθ)ᵏ on dx¹∧…∧dx^{2k+1}.
pub fn contact_volume(theta: &[f64], d_theta: &TwoForm) -> f64 {
    let k = (theta.len() - 1) / 2;
    Form::from_one_form(theta)
        .wedge(&Form::from_two_form(d_theta).power(k))
        .top()
}

/// Determinant of the coefficient matrix of a 2-form (the squared Pfaffian).
pub fn two_form_det(m: &TwoForm) -> f64 {
    let n = m.len();
    DMatrix::from_fn(n, n, |i, j| m[i][j]).determinant()
}

/// |det M| divided by the product of the row norms (Hadamard's bound): 1 for
/// orthogonal rows, 0 for a degenerate form.
pub fn two_form_nondegeneracy(m: &TwoForm) -> f64 {
    let rows: f64 = m
        .iter()
        .map(|r| r.iter().map(|x| x * x).sum::<f64>().sqrt())
        .product();
    if rows == 0.0 {
        return 0.0;
    }
    two_form_det(m).abs() / rows
}

/// Particle families with a closed-form contact form.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum ContactFamily {
    /// Klein-Gordon on ℋᵐ × ℝ³ × S¹, chart (k₁, k₂, k₃, x¹, x², x³, t) shifted by τ.
    KleinGordon { m: f64, eta: f64, tau: f64 },
    /// Dirac-type (T ≥ 1) on 𝓑 × ℝ³, chart (Re w¹, Im w¹, Re w², Im w², Re y, Im y, x¹, x², x³).
    Dirac { m: f64, eta: f64, t: u32 },
}

impl ContactFamily {
    pub fn dim(&self) -> usize {
        match self {
            ContactFamily::KleinGordon { .. } => 7,
            ContactFamily::Dirac { .. } => 9,
        }
    }

    /// The dual element whose left-invariant form is pulled back.
    pub fn alpha(&self) -> CoForm {
        match *self {
            ContactFamily::KleinGordon { m, eta, .. } => CoForm {
                a: M2::zeros(),
                k: Herm2::project(id2() * cplx(eta * m, 0.0)),
            },
            ContactFamily::Dirac { m, eta, t } => CoForm {
                a: sigma(3) * cplx(0.0, t as f64 / (8.0 * std::f64::consts::PI)),
                k: Herm2::project(id2() * cplx(eta * m, 0.0)),
            },
        }
    }

    /// The section of G → G/Ker C_α used for the pullback.
    pub fn section(&self, r: &[f64]) -> Result<GroupElem> {
        match *self {
            ContactFamily::KleinGordon { m, eta, tau } => kg_contact_section(m, eta, tau, r),
            ContactFamily::Dirac { .. } => {
                let (w, z, x) = dirac_chart(r)?;
                let a = M2::new(w[0], -z[1].conj(), w[1], z[0].conj());
                Ok(GroupElem {
                    a: SL2::project(a),
                    h: Herm2::project(h3(&x)),
                })
            }
        }
    }

    /// Closed-form contact-form coefficients at chart point r.
    pub fn closed_form(&self, r: &[f64]) -> Result<Vec<f64>> {
        match *self {
            ContactFamily::KleinGordon { m, eta, .. } => {
                check_len(r, 7)?;
                let mut c = vec![0.0; 7];
                for i in 0..3 {
                    c[3 + i] = eta * m * r[i];
                }
                c[6] = 1.0;
                Ok(c)
            }
            ContactFamily::Dirac { m, eta, t } => dirac_closed_form(m, eta, t, r),
        }
    }

    /// Coefficients of σ*α̃ at chart point r.
    pub fn pullback(&self, r: &[f64]) -> Result<Vec<f64>> {
        left_invariant_pullback(&self.alpha(), |s| self.section(s), r, CURVE_STEP)
    }
}

fn check_len(r: &[f64], n: usize) -> Result<()> {
    if r.len() != n {
        return Err(Error::Invalid(format!(
            "chart point needs {n} coordinates, got {}",
            r.len()
        )));
    }
    Ok(())
}

/// σ_τ(k, x, t) = (A(k), h(x, 0) − (η/m)(t + τ) h(k, k₄)) with A A* = h(k, k₄).
pub fn kg_contact_section(m: f64, eta: f64, tau: f64, r: &[f64]) -> Result<GroupElem> {
    check_len(r, 7)?;
    if !(-0.5..0.5).contains(&r[6]) {
        return Err(Error::OffDomain(format!(
            "t = {} outside (−1/2, 1/2)",
            r[6]
        )));
    }
    let k = [r[0], r[1], r[2]];
    let k4 = (1.0 + dot(&k, &k)).sqrt();
    let rho = 1.0 + k[0] * k[0] + k[1] * k[1];
    let a = ((k4 + k[2]) / rho).sqrt();
    let am = M2::new(
        cplx(a, 0.0),
        cplx(a * k[0], -a * k[1]),
        cplx(0.0, 0.0),
        cplx(1.0 / a, 0.0),
    );
    let kk = h_map(FourVector::from_parts(k, k4)).matrix();
    let h = h3(&[r[3], r[4], r[5]]) - kk * cplx(eta / m * (r[6] + tau), 0.0);
    Ok(GroupElem {
        a: SL2::project(am),
        h: Herm2::project(h),
    })
}

/// z(w, y) = (w + y εw̄)/(w*w), the global chart of 𝓑 = {z*w = 1}.
pub fn z_of(w: &V2, y: C64) -> Result<V2> {
    let n = w.norm_squared();
    if n == 0.0 {
        return Err(Error::OffDomain("w = 0".into()));
    }
    Ok((w + eps() * conj_v(w) * y) / cplx(n, 0.0))
}

fn dirac_chart(r: &[f64]) -> Result<(V2, V2, Vec3)> {
    check_len(r, 9)?;
    let w = V2::new(cplx(r[0], r[1]), cplx(r[2], r[3]));
    let z = z_of(&w, cplx(r[4], r[5]))?;
    Ok((w, z, [r[6], r[7], r[8]]))
}

/// (iT/4π)Σⱼ(zʲdw̄ʲ − z̄ʲdwʲ) − Σᵢ Pⁱdxⁱ with P = −ηm(ww* − ε(zz*)‾ε),
/// evaluated on chart tangent vectors obtained by differentiating the chart map.
fn dirac_closed_form(m: f64, eta: f64, t: u32, r: &[f64]) -> Result<Vec<f64>> {
    let (w, z, _) = dirac_chart(r)?;
    let e = eps();
    let kk = w * w.adjoint() - e * conj(&(z * z.adjoint())) * e;
    let p = Herm2::project(kk * cplx(-eta * m, 0.0)).four();
    let c = t as f64 / (4.0 * std::f64::consts::PI);
    let mut out = vec![0.0; 9];
    for (j, o) in out.iter_mut().enumerate().take(6) {
        let d = stencil5(
            |s| {
                let mut rr = r.to_vec();
                rr[j] += s;
                let (w, z, _) = dirac_chart(&rr).expect("chart is open around r");
                [w[0], w[1], z[0], z[1]]
                    .iter()
                    .flat_map(|c| [c.re, c.im])
                    .collect()
            },
            CURVE_STEP,
        );
        let dw = [cplx(d[0], d[1]), cplx(d[2], d[3])];
        // i(z dw̄ − z̄ dw) = i·2i·Im(z dw̄) = −2 Im(z dw̄).
        let s: C64 = (0..2).map(|k| z[k] * dw[k].conj()).sum();
        *o = -2.0 * c * s.im;
    }
    for i in 0..3 {
        out[6 + i] = -p.0[i];
    }
    Ok(out)
}

/// Largest coefficient deviation between the numeric pullback and the closed form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContactReport {
    pub family: ContactFamily,
    pub samples: usize,
    pub max_abs: f64,
}

pub fn contact_pullback_check(
    family: &ContactFamily,
    points: &[Vec<f64>],
) -> Result<ContactReport> {
    let mut max_abs: f64 = 0.0;
    for r in points {
        let num = family.pullback(r)?;
        let closed = family.closed_form(r)?;
        for (a, b) in num.iter().zip(&closed) {
            max_abs = max_abs.max((a - b).abs());
        }
    }
    Ok(ContactReport {
        family: *family,
        samples: points.len(),
        max_abs,
    })
}

/// Coefficient of Ω∧(dΩ)³ on dt∧dk₁∧dk₂∧dk₃∧dx¹∧dx²∧dx³ for the Klein-Gordon
/// contact form, with Ω from the numeric pullback and dΩ by finite differences.
pub fn kg_volume_coefficient(m: f64, eta: f64, r: &[f64]) -> Result<f64> {
    let fam = ContactFamily::KleinGordon { m, eta, tau: 0.0 };
    let theta = fam.pullback(r)?;
    let d = exterior_derivative(|s| fam.pullback(s), r, EXTERIOR_STEP)?;
    // Chart order (k, x, t) → (t, k, x) moves dt across six 1-forms: sign +1.
    Ok(contact_volume(&theta, &d))
}

/// Charts ψ₁..ψ₄ of projective twistor space, each with coordinates (t, u, v)
/// given as six reals (Re t, Im t, Re u, Im u, Re v, Im v).
pub fn twistor_chart(k: usize, r: &[f64]) -> Result<Twistor> {
    check_len(r, 6)?;
    let (t, u, v) = (cplx(r[0], r[1]), cplx(r[2], r[3]), cplx(r[4], r[5]));
    let one = cplx(1.0, 0.0);
    let c = match k {
        1 => [one, t, u, v],
        2 => [v, one, t, u],
        3 => [u, v, one, t],
        4 => [t, u, v, one],
        _ => return Err(Error::Invalid(format!("twistor chart {k} does not exist"))),
    };
    Ok(Twistor::from_components(c))
}

/// Chart coordinates of the projective class of Z in chart k.
pub fn twistor_coords(k: usize, z: &Twistor) -> Result<Vec<f64>> {
    let c = z.components();
    let (pivot, order) = match k {
        1 => (0, [1, 2, 3]),
        2 => (1, [2, 3, 0]),
        3 => (2, [3, 0, 1]),
        4 => (3, [0, 1, 2]),
        _ => return Err(Error::Invalid(format!("twistor chart {k} does not exist"))),
    };
    if c[pivot].norm() == 0.0 {
        return Err(Error::OffDomain(format!("twistor outside chart {k}")));
    }
    Ok(order
        .iter()
        .flat_map(|&i| {
            let x = c[i] / c[pivot];
            [x.re, x.im]
        })
        .collect())
}

/// σ_k∘ψ_k = √(2ν/Re φ)·ψ_k(t, u, v), φ = u + t̄v.
pub fn twistor_section(spec: &MasslessSpec, k: usize, r: &[f64]) -> Result<Twistor> {
    let z = twistor_chart(k, r)?;
    let phi = phi_form(&z);
    check_sign(spec, phi)?;
    Ok(z.scale(cplx((2.0 * spec.nu() / phi).sqrt(), 0.0)))
}

/// The local primitive (ην/Re φ)(d Im φ + i(v dt̄ − v̄ dt)) in real coordinates.
pub fn local_primitive(spec: &MasslessSpec, r: &[f64]) -> Result<Vec<f64>> {
    check_len(r, 6)?;
    let (tr, ti, _ur, _ui, vr, vi) = (r[0], r[1], r[2], r[3], r[4], r[5]);
    let re_phi = r[2] + tr * vr + ti * vi;
    check_sign(spec, re_phi)?;
    let c = spec.eta * spec.nu() / re_phi;
    // Im φ = uᵢ + t_r vᵢ − tᵢ v_r and i(v dt̄ − v̄ dt) = −2(vᵢ dt_r − v_r dtᵢ).
    let d_im = [vi, -vr, 0.0, 1.0, -ti, tr];
    let extra = [-2.0 * vi, 2.0 * vr, 0.0, 0.0, 0.0, 0.0];
    Ok((0..6).map(|i| c * (d_im[i] + extra[i])).collect())
}

/// Pullback of ω₀ through σ_k∘ψ_k, from finite-difference tangents of the section.
pub fn primitive_pullback(spec: &MasslessSpec, k: usize, r: &[f64]) -> Result<Vec<f64>> {
    let z = twistor_section(spec, k, r)?;
    let tangents = section_tangents(spec, k, r)?;
    Ok(tangents.iter().map(|v| omega0(spec, &z, v)).collect())
}

fn section_tangents(spec: &MasslessSpec, k: usize, r: &[f64]) -> Result<Vec<Twistor>> {
    twistor_section(spec, k, r)?;
    (0..6)
        .map(|j| {
            let mut err = None;
            let d = stencil5(
                |s| {
                    let mut rr = r.to_vec();
                    rr[j] += s;
                    match twistor_section(spec, k, &rr) {
                        Ok(z) => z.components().iter().flat_map(|c| [c.re, c.im]).collect(),
                        Err(e) => {
                            err = Some(e);
                            vec![0.0; 8]
                        }
                    }
                },
                CURVE_STEP,
            );
            match err {
                Some(e) => Err(e),
                None => Ok(Twistor::from_components(
                    [0, 1, 2, 3].map(|i| cplx(d[2 * i], d[2 * i + 1])),
                )),
            }
        })
        .collect()
}

/// Local symplectic form d((σ_k∘ψ_k)*ω) from the closed-form primitive.
pub fn local_symplectic(spec: &MasslessSpec, r: &[f64]) -> Result<TwoForm> {
    exterior_derivative(|s| local_primitive(spec, s), r, EXTERIOR_STEP)
}

/// σ*Ω with Ω = (iην/Φ)Σⱼ(dzʲ∧dw̄ʲ + dwʲ∧dz̄ʲ) evaluated on section tangents.
pub fn symplectic_pullback(spec: &MasslessSpec, k: usize, r: &[f64]) -> Result<TwoForm> {
    let z = twistor_section(spec, k, r)?;
    let tv = section_tangents(spec, k, r)?;
    let c = spec.eta * spec.nu() / phi_form(&z);
    let n = tv.len();
    let mut m = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let (x, y) = (&tv[i], &tv[j]);
            let a: C64 = (0..2)
                .map(|l| x.z[l] * y.w[l].conj() + x.w[l] * y.z[l].conj())
                .sum();
            // i(a − ā) = −2 Im a.
            m[i][j] = -2.0 * c * a.im;
        }
    }
    Ok(m)
}

/// Jacobian of the chart transition ψ_to⁻¹∘ψ_from at r (rows: target
/// coordinates). The transition is holomorphic, so each 2×2 real block is the
/// multiplication matrix of a complex derivative, obtained by the quotient rule.
pub fn chart_transition_jacobian(
    from: usize,
    to: usize,
    r: &[f64],
) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    let c = twistor_chart(from, r)?.components();
    let image = twistor_coords(to, &Twistor::from_components(c))?;
    let p = to - 1;
    let mut jac = vec![vec![0.0; 6]; 6];
    for i in 0..3 {
        let a = (to + i) % 4;
        for j in 0..3 {
            let b = (from + j) % 4;
            let da = if a == b { 1.0 } else { 0.0 };
            let dp = if p == b { 1.0 } else { 0.0 };
            let d = (c[p] * da - c[a] * dp) / (c[p] * c[p]);
            jac[2 * i][2 * j] = d.re;
            jac[2 * i][2 * j + 1] = -d.im;
            jac[2 * i + 1][2 * j] = d.im;
            jac[2 * i + 1][2 * j + 1] = d.re;
        }
    }
    Ok((image, jac))
}

/// max |Ω_from − Jᵀ Ω_to J| for the closed-form local symplectic forms.
pub fn chart_overlap_residual(
    spec: &MasslessSpec,
    from: usize,
    to: usize,
    r: &[f64],
) -> Result<f64> {
    let (image, j) = chart_transition_jacobian(from, to, r)?;
    let a = local_symplectic(spec, r)?;
    let b = local_symplectic(spec, &image)?;
    let mut worst: f64 = 0.0;
    for p in 0..6 {
        for q in 0..6 {
            let mut s = 0.0;
            for i in 0..6 {
                for l in 0..6 {
                    s += j[i][p] * b[i][l] * j[l][q];
                }
            }
            worst = worst.max((a[p][q] - s).abs());
        }
    }
    Ok(worst)
}
