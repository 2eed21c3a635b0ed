//! Invariant measures on the mass hyperboloid ℋᵐ, the future light cone C⁺
//! and ℋᵐ × P₁(ℂ), compactly supported profiles, and tensor Gauss–Legendre
//! grids over chart coordinates.
//!
//! Node order is lexicographic with the last coordinate fastest; integrals
//! are reduced with [`crate::quad::reduce`], so results do not depend on the
//! thread count.

use crate::error::{Error, Result};
use crate::quad::{gauss_legendre_on, reduce};
use crate::spinor::*;
use serde::{Deserialize, Serialize};

#[allow(non_camel_case_types)]
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ChartId {
    HM,
    CPLUS,
    HM_P1_S,
    HM_P1_N,
}

impl ChartId {
    /// Number of real coordinates.
    pub fn dim(self) -> usize {
        match self {
            ChartId::HM | ChartId::CPLUS => 3,
            _ => 5,
        }
    }
}

/// A point in chart coordinates. The P₁ charts use the representatives
/// (1, z) (south) and (z, 1) (north).
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ChartPoint {
    Hm(Vec3),
    Cplus(Vec3),
    HmP1S(Vec3, C64),
    HmP1N(Vec3, C64),
}

impl ChartPoint {
    pub fn chart(&self) -> ChartId {
        match self {
            ChartPoint::Hm(_) => ChartId::HM,
            ChartPoint::Cplus(_) => ChartId::CPLUS,
            ChartPoint::HmP1S(..) => ChartId::HM_P1_S,
            ChartPoint::HmP1N(..) => ChartId::HM_P1_N,
        }
    }

    pub fn from_coords(chart: ChartId, c: &[f64]) -> Result<Self> {
        if c.len() != chart.dim() {
            return Err(Error::Invalid(format!(
                "{chart:?} needs {} coordinates, got {}",
                chart.dim(),
                c.len()
            )));
        }
        let p = [c[0], c[1], c[2]];
        let pt = match chart {
            ChartId::HM => ChartPoint::Hm(p),
            ChartId::CPLUS => ChartPoint::Cplus(p),
            ChartId::HM_P1_S => ChartPoint::HmP1S(p, cplx(c[3], c[4])),
            ChartId::HM_P1_N => ChartPoint::HmP1N(p, cplx(c[3], c[4])),
        };
        pt.check()?;
        Ok(pt)
    }

    fn check(&self) -> Result<()> {
        if self.coords().iter().any(|x| !x.is_finite()) {
            return Err(Error::OffDomain("non-finite coordinate".into()));
        }
        if let ChartPoint::Cplus(p) = self {
            if norm3(p) == 0.0 {
                return Err(Error::OffDomain("the cone chart excludes p = 0".into()));
            }
        }
        Ok(())
    }

    pub fn coords(&self) -> Vec<f64> {
        match *self {
            ChartPoint::Hm(p) | ChartPoint::Cplus(p) => p.to_vec(),
            ChartPoint::HmP1S(p, z) | ChartPoint::HmP1N(p, z) => vec![p[0], p[1], p[2], z.re, z.im],
        }
    }

    pub fn p(&self) -> Vec3 {
        match *self {
            ChartPoint::Hm(p)
            | ChartPoint::Cplus(p)
            | ChartPoint::HmP1S(p, _)
            | ChartPoint::HmP1N(p, _) => p,
        }
    }

    /// Momentum K = h(p, p₄) with p₄ = √(m² + ‖p‖²) (‖p‖ on the cone).
    pub fn momentum(&self, m: f64) -> Herm2 {
        let p = self.p();
        let p4 = match self {
            ChartPoint::Cplus(_) => norm3(&p),
            _ => (m * m + dot(&p, &p)).sqrt(),
        };
        h_map(FourVector::from_parts(p, p4))
    }

    /// Representative of the P₁ factor.
    pub fn spinor(&self) -> Option<V2> {
        let one = cplx(1.0, 0.0);
        match *self {
            ChartPoint::HmP1S(_, z) => Some(V2::new(one, z)),
            ChartPoint::HmP1N(_, z) => Some(V2::new(z, one)),
            _ => None,
        }
    }
}

/// Point of ℋᵐ × P₁ in the chart whose representative is best conditioned
/// (south when |w₁| ≥ |w₂|).
pub fn hm_p1_point(k: &Herm2, w: &V2) -> Result<ChartPoint> {
    let p = k.four().spatial();
    if w[0].norm() >= w[1].norm() {
        if w[0].norm() == 0.0 {
            return Err(Error::Degenerate("zero spinor".into()));
        }
        Ok(ChartPoint::HmP1S(p, w[1] / w[0]))
    } else {
        Ok(ChartPoint::HmP1N(p, w[0] / w[1]))
    }
}

/// Re-express a point of ℋᵐ × P₁ in the given P₁ chart.
pub fn to_chart(pt: &ChartPoint, chart: ChartId) -> Result<ChartPoint> {
    let w = pt
        .spinor()
        .ok_or_else(|| Error::Invalid("not a point of the P1 product".into()))?;
    let p = pt.p();
    match chart {
        ChartId::HM_P1_S if w[0].norm() > 0.0 => Ok(ChartPoint::HmP1S(p, w[1] / w[0])),
        ChartId::HM_P1_N if w[1].norm() > 0.0 => Ok(ChartPoint::HmP1N(p, w[0] / w[1])),
        _ => Err(Error::OffDomain(format!("point lies outside {chart:?}"))),
    }
}

/// The SL(2,ℂ) action A·K = AKA* (and [w] ↦ [Aw] on the P₁ factor),
/// returned in the chart of the input.
pub fn act_point(a: &SL2, pt: &ChartPoint, m: f64) -> Result<ChartPoint> {
    let k = pt.momentum(m).congruence(a);
    let p = k.four().spatial();
    match pt {
        ChartPoint::Hm(_) => Ok(ChartPoint::Hm(p)),
        ChartPoint::Cplus(_) => Ok(ChartPoint::Cplus(p)),
        ChartPoint::HmP1S(..) | ChartPoint::HmP1N(..) => {
            let w = a.matrix() * pt.spinor().unwrap();
            match pt.chart() {
                ChartId::HM_P1_S if w[0].norm() > 0.0 => Ok(ChartPoint::HmP1S(p, w[1] / w[0])),
                ChartId::HM_P1_N if w[1].norm() > 0.0 => Ok(ChartPoint::HmP1N(p, w[0] / w[1])),
                _ => Err(Error::OffDomain("image leaves the chart".into())),
            }
        }
    }
}

#[allow(non_camel_case_types)]
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MeasureId {
    NU_HM,
    OMEGA_CPLUS,
    MU_HM_P1,
}

/// An invariant measure together with the mass it depends on.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Measure {
    Nu { m: f64 },
    Omega,
    Mu { m: f64 },
}

impl Measure {
    pub fn id(&self) -> MeasureId {
        match self {
            Measure::Nu { .. } => MeasureId::NU_HM,
            Measure::Omega => MeasureId::OMEGA_CPLUS,
            Measure::Mu { .. } => MeasureId::MU_HM_P1,
        }
    }

    pub fn mass(&self) -> f64 {
        match *self {
            Measure::Nu { m } | Measure::Mu { m } => m,
            Measure::Omega => 0.0,
        }
    }

    pub fn accepts(&self, chart: ChartId) -> bool {
        matches!(
            (self, chart),
            (Measure::Nu { .. }, ChartId::HM)
                | (Measure::Omega, ChartId::CPLUS)
                | (Measure::Mu { .. }, ChartId::HM_P1_S | ChartId::HM_P1_N)
        )
    }
}

/// z*εK̄εz for K ∈ ℋᵐ and a representative z; negative on valid inputs.
pub fn p1_denominator(k: &Herm2, z: &V2) -> f64 {
    let e = eps();
    (z.adjoint() * e * conj(k) * e * z)[(0, 0)].re
}

/// Density of the invariant measure in chart coordinates (absolute value).
///
/// ν: 1/√(m²+‖p‖²). ω: 1/‖p‖. μ: 1/(√(m²+‖p‖²)·(z*εK̄εz)²), with the squared
/// denominator required for invariance under z ↦ λz; the constant from
/// dz∧dz̄ = −2i dx∧dy is not included.
pub fn measure_density(pt: &ChartPoint, measure: &Measure) -> Result<f64> {
    if !measure.accepts(pt.chart()) {
        return Err(Error::Invalid(format!(
            "{:?} is not defined on {:?}",
            measure.id(),
            pt.chart()
        )));
    }
    pt.check()?;
    let p = pt.p();
    match *measure {
        Measure::Nu { m } => Ok(1.0 / (m * m + dot(&p, &p)).sqrt()),
        Measure::Omega => Ok(1.0 / norm3(&p)),
        Measure::Mu { m } => {
            let k = pt.momentum(m);
            let d = p1_denominator(&k, &pt.spinor().unwrap());
            Ok(1.0 / (k.four().x4() * d * d))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProfileKind {
    Bump,
    Table,
}

/// Samples on the uniform tensor grid spanning the support box
/// [center − radius, center + radius]ᵈ, endpoints included; interpolated
/// multilinearly and zero outside the box.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub shape: Vec<usize>,
    pub values: Vec<C64>,
}

/// A compactly supported profile on a chart.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Profile {
    pub kind: ProfileKind,
    pub chart: ChartId,
    pub center: Vec<f64>,
    pub radius: f64,
    pub amplitude: C64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Table>,
}

impl Profile {
    pub fn bump(chart: ChartId, center: &[f64], radius: f64, amplitude: C64) -> Self {
        Profile {
            kind: ProfileKind::Bump,
            chart,
            center: center.to_vec(),
            radius,
            amplitude,
            table: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let d = self.chart.dim();
        if self.center.len() != d {
            return Err(Error::Invalid(format!(
                "profile center needs {d} coordinates"
            )));
        }
        if !(self.radius.is_finite() && self.radius > 0.0) {
            return Err(Error::Invalid("profile support is empty".into()));
        }
        if self.center.iter().any(|c| !c.is_finite()) || !self.amplitude.is_finite() {
            return Err(Error::Invalid("non-finite profile parameter".into()));
        }
        if self.kind == ProfileKind::Table {
            let t = self
                .table
                .as_ref()
                .ok_or(Error::MissingParameter("table"))?;
            if t.shape.len() != d
                || t.shape.iter().any(|&n| n < 2)
                || t.values.len() != t.shape.iter().product::<usize>()
            {
                return Err(Error::Invalid(
                    "table shape does not match its values".into(),
                ));
            }
        }
        if self.chart == ChartId::CPLUS
            && norm3(&[self.center[0], self.center[1], self.center[2]]) <= self.radius
        {
            return Err(Error::OffDomain(
                "profile support reaches the cone vertex".into(),
            ));
        }
        Ok(())
    }

    /// Value at chart coordinates `c` (amplitude included).
    pub fn eval(&self, c: &[f64]) -> C64 {
        match self.kind {
            ProfileKind::Bump => {
                let r2: f64 = c
                    .iter()
                    .zip(&self.center)
                    .map(|(x, c0)| ((x - c0) / self.radius).powi(2))
                    .sum();
                if r2 < 1.0 {
                    self.amplitude * (-1.0 / (1.0 - r2)).exp()
                } else {
                    cplx(0.0, 0.0)
                }
            }
            ProfileKind::Table => self.eval_table(c),
        }
    }

    fn eval_table(&self, c: &[f64]) -> C64 {
        let t = match &self.table {
            Some(t) => t,
            None => return cplx(0.0, 0.0),
        };
        let d = c.len();
        let mut base = 0usize;
        let mut frac = vec![0.0; d];
        let mut strides = vec![1usize; d];
        for i in (0..d.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * t.shape[i + 1];
        }
        for i in 0..d {
            let u = (c[i] - self.center[i] + self.radius) / (2.0 * self.radius)
                * (t.shape[i] - 1) as f64;
            if !(0.0..=(t.shape[i] - 1) as f64).contains(&u) {
                return cplx(0.0, 0.0);
            }
            let j = (u.floor() as usize).min(t.shape[i] - 2);
            frac[i] = u - j as f64;
            base += j * strides[i];
        }
        let mut acc = cplx(0.0, 0.0);
        for corner in 0..(1usize << d) {
            let mut wgt = 1.0;
            let mut idx = base;
            for i in 0..d {
                if corner >> i & 1 == 1 {
                    wgt *= frac[i];
                    idx += strides[i];
                } else {
                    wgt *= 1.0 - frac[i];
                }
            }
            if wgt != 0.0 {
                acc += t.values[idx] * wgt;
            }
        }
        self.amplitude * acc
    }

    pub fn eval_point(&self, pt: &ChartPoint) -> C64 {
        if pt.chart() != self.chart {
            return match to_chart(pt, self.chart) {
                Ok(q) => self.eval(&q.coords()),
                Err(_) => cplx(0.0, 0.0),
            };
        }
        self.eval(&pt.coords())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// Tensor Gauss–Legendre grid over a coordinate box of one chart.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureGrid {
    pub chart: ChartId,
    pub measure: Measure,
    pub axes: Vec<Axis>,
}

impl QuadratureGrid {
    /// Grid over the box `lo..hi` with `order` nodes per real axis.
    pub fn on_box(
        chart: ChartId,
        measure: Measure,
        lo: &[f64],
        hi: &[f64],
        order: usize,
    ) -> Result<Self> {
        if !measure.accepts(chart) {
            return Err(Error::Invalid(format!(
                "{:?} is not defined on {chart:?}",
                measure.id()
            )));
        }
        if lo.len() != chart.dim() || hi.len() != chart.dim() || order == 0 {
            return Err(Error::Invalid("box dimension or order mismatch".into()));
        }
        let axes = lo
            .iter()
            .zip(hi)
            .map(|(&a, &b)| {
                let (nodes, weights) = gauss_legendre_on(order, a, b);
                Axis { nodes, weights }
            })
            .collect();
        Ok(QuadratureGrid {
            chart,
            measure,
            axes,
        })
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(|a| a.nodes.len()).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Chart coordinates and tensor weight of node `i`.
    pub fn node(&self, mut i: usize, coords: &mut [f64]) -> f64 {
        let mut w = 1.0;
        for (d, ax) in self.axes.iter().enumerate().rev() {
            let n = ax.nodes.len();
            let j = i % n;
            i /= n;
            coords[d] = ax.nodes[j];
            w *= ax.weights[j];
        }
        w
    }

    pub fn point(&self, i: usize) -> (ChartPoint, f64) {
        let mut c = [0.0; 5];
        let d = self.chart.dim();
        let w = self.node(i, &mut c[..d]);
        let p = [c[0], c[1], c[2]];
        let pt = match self.chart {
            ChartId::HM => ChartPoint::Hm(p),
            ChartId::CPLUS => ChartPoint::Cplus(p),
            ChartId::HM_P1_S => ChartPoint::HmP1S(p, cplx(c[3], c[4])),
            ChartId::HM_P1_N => ChartPoint::HmP1N(p, cplx(c[3], c[4])),
        };
        (pt, w)
    }

    pub fn weight_sum(&self) -> f64 {
        self.axes
            .iter()
            .map(|a| a.weights.iter().sum::<f64>())
            .product()
    }
}

/// Tensor grid covering the bounding box of the profile's support.
pub fn build_grid(
    profile: &Profile,
    order_per_axis: usize,
    measure: Measure,
) -> Result<QuadratureGrid> {
    profile.validate()?;
    if !measure.accepts(profile.chart) {
        return Err(Error::Invalid(format!(
            "{:?} is not defined on {:?}",
            measure.id(),
            profile.chart
        )));
    }
    let lo: Vec<f64> = profile.center.iter().map(|c| c - profile.radius).collect();
    let hi: Vec<f64> = profile.center.iter().map(|c| c + profile.radius).collect();
    QuadratureGrid::on_box(profile.chart, measure, &lo, &hi, order_per_axis)
}

/// Σ wᵢ·f(nodeᵢ)·density(nodeᵢ). Nodes where f vanishes contribute zero
/// without evaluating the density.
pub fn integrate<F>(f: F, grid: &QuadratureGrid) -> Result<C64>
where
    F: Fn(&ChartPoint) -> C64 + Sync,
{
    Ok(integrate_vec(1, |pt, out| out[0] = f(pt), grid)?[0])
}

/// Componentwise version of [`integrate`] for `dim`-component integrands.
pub fn integrate_vec<F>(dim: usize, f: F, grid: &QuadratureGrid) -> Result<Vec<C64>>
where
    F: Fn(&ChartPoint, &mut [C64]) + Sync,
{
    reduce(grid.len(), dim, |i, out| {
        let (pt, w) = grid.point(i);
        f(&pt, out);
        if out.iter().all(|x| *x == cplx(0.0, 0.0)) {
            return;
        }
        let rho = measure_density(&pt, &grid.measure).unwrap_or(f64::NAN);
        out.iter_mut().for_each(|x| *x *= w * rho);
    })
}

/// ∫ (f∘A) dμ evaluated through the substitution y = A·x:
/// Σ wᵢ·f(yᵢ)·density(A⁻¹·yᵢ)·|det ∂(A⁻¹·y)/∂y|, with the Jacobian taken by
/// 5-point central differences in chart coordinates (step `FD_STEP`).
pub fn integrate_composed<F>(f: F, a: &SL2, grid: &QuadratureGrid) -> Result<C64>
where
    F: Fn(&ChartPoint) -> C64 + Sync,
{
    let ainv = a.inverse();
    let m = grid.measure.mass();
    crate::quad::reduce_scalar(grid.len(), |i| {
        let (pt, w) = grid.point(i);
        let v = f(&pt);
        if v == cplx(0.0, 0.0) {
            return v;
        }
        match transported_density(&ainv, &pt, &grid.measure, m) {
            Ok(rho) => v * (w * rho),
            Err(_) => cplx(f64::NAN, 0.0),
        }
    })
}

pub const FD_STEP: f64 = 1e-3;

/// density(B·y)·|det ∂(B·y)/∂y|, the density of the measure carried by B.
pub fn transported_density(b: &SL2, pt: &ChartPoint, measure: &Measure, m: f64) -> Result<f64> {
    let y = pt.coords();
    let d = y.len();
    let image = |c: &[f64]| -> Result<Vec<f64>> {
        Ok(act_point(b, &ChartPoint::from_coords(pt.chart(), c)?, m)?.coords())
    };
    let mut jac = nalgebra::DMatrix::<f64>::zeros(d, d);
    let mut c = y.clone();
    for j in 0..d {
        let h = FD_STEP * (1.0 + y[j].abs());
        let mut col = vec![0.0; d];
        for (s, wt) in [(-2.0, 1.0), (-1.0, -8.0), (1.0, 8.0), (2.0, -1.0)] {
            c[j] = y[j] + s * h;
            let v = image(&c)?;
            col.iter_mut().zip(v).for_each(|(a, x)| *a += wt * x);
        }
        c[j] = y[j];
        for i in 0..d {
            jac[(i, j)] = col[i] / (12.0 * h);
        }
    }
    let q = act_point(b, pt, m)?;
    Ok(measure_density(&q, measure)? * jac.determinant().abs())
}

/// Nodes where `f` is nonzero, with their combined weight w·density·f, in
/// node order.
pub fn weighted_nodes<F>(f: F, grid: &QuadratureGrid) -> Result<Vec<(ChartPoint, C64)>>
where
    F: Fn(&ChartPoint) -> C64 + Sync,
{
    let all = crate::quad::par_map(grid.len(), |i| {
        let (pt, w) = grid.point(i);
        let v = f(&pt);
        if v == cplx(0.0, 0.0) {
            return Ok(None);
        }
        let c = v * (w * measure_density(&pt, &grid.measure)?);
        if !c.is_finite() {
            return Err(Error::Quadrature(format!(
                "non-finite integrand at node {i}"
            )));
        }
        Ok(Some((pt, c)))
    });
    all.into_iter().filter_map(|r| r.transpose()).collect()
}
