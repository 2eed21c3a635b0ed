//! Waves as finite sums of exact plane waves.
//!
//! Every prewave in the crate has the form c(K)·v(K)·exp(2πiη⟨k, x⟩), so a
//! quadrature of it over momentum space is Σᵢ cᵢ vᵢ exp(2πiη⟨kᵢ, x⟩) with
//! cᵢ = weightᵢ·densityᵢ·f₀(Kᵢ). Spacetime derivatives act on each term as
//! multiplication by 2πiη g_νν k_ν, g = diag(−1, −1, −1, +1) in the order
//! (x¹, x², x³, x⁴).

use crate::error::Result;
use crate::measure::{measure_density, ChartPoint, QuadratureGrid};
use crate::quad::{par_map, reduce};
use crate::spinor::*;
use std::f64::consts::PI;

#[derive(Clone, Debug, PartialEq)]
pub struct PlaneNode {
    pub k: FourVector,
    pub c: C64,
    pub v: Vec<C64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PlaneWaveSum {
    pub eta: f64,
    pub dim: usize,
    pub nodes: Vec<PlaneNode>,
}

impl PlaneWaveSum {
    /// Collects the nonzero nodes of `grid`; `value` writes f₀·v at a node
    /// (all zeros to skip it).
    pub fn from_grid<F>(eta: f64, dim: usize, grid: &QuadratureGrid, value: F) -> Result<Self>
    where
        F: Fn(&ChartPoint, &mut [C64]) -> Result<()> + Sync + Send,
    {
        let m = grid.measure.mass();
        let all = par_map(grid.len(), |i| -> Result<Option<PlaneNode>> {
            let (pt, w) = grid.point(i);
            let mut v = vec![cplx(0.0, 0.0); dim];
            value(&pt, &mut v)?;
            if v.iter().all(|x| *x == cplx(0.0, 0.0)) {
                return Ok(None);
            }
            let c = cplx(w * measure_density(&pt, &grid.measure)?, 0.0);
            Ok(Some(PlaneNode {
                k: pt.momentum(m).four(),
                c,
                v,
            }))
        });
        let nodes = all
            .into_iter()
            .filter_map(|r| r.transpose())
            .collect::<Result<Vec<_>>>()?;
        Ok(PlaneWaveSum { eta, dim, nodes })
    }

    /// Σ cᵢ·factor(kᵢ)·vᵢ·exp(2πiη⟨kᵢ, x⟩).
    pub fn eval_with<F>(&self, x: FourVector, factor: F) -> Result<Vec<C64>>
    where
        F: Fn(&FourVector) -> C64 + Sync,
    {
        let two_pi_eta = 2.0 * PI * self.eta;
        reduce(self.nodes.len(), self.dim, |i, out| {
            let n = &self.nodes[i];
            let c = n.c * factor(&n.k) * cplx(0.0, two_pi_eta * n.k.minkowski(&x)).exp();
            for (o, v) in out.iter_mut().zip(&n.v) {
                *o = c * v;
            }
        })
    }

    pub fn eval(&self, x: FourVector) -> Result<Vec<C64>> {
        self.eval_with(x, |_| cplx(1.0, 0.0))
    }

    /// Multiplier of ∂_ν (ν = 0..3 for x¹..x⁴) on the plane wave with momentum k.
    pub fn d_factor(&self, nu: usize, k: &FourVector) -> C64 {
        let g = if nu == 3 { 1.0 } else { -1.0 };
        cplx(0.0, 2.0 * PI * self.eta * g * k.0[nu])
    }

    /// First derivatives ∂_ν ψ for ν = 0..3.
    pub fn gradient(&self, x: FourVector) -> Result<[Vec<C64>; 4]> {
        Ok([
            self.eval_with(x, |k| self.d_factor(0, k))?,
            self.eval_with(x, |k| self.d_factor(1, k))?,
            self.eval_with(x, |k| self.d_factor(2, k))?,
            self.eval_with(x, |k| self.d_factor(3, k))?,
        ])
    }

    /// Second derivative ∂_μ∂_ν ψ.
    pub fn second(&self, x: FourVector, mu: usize, nu: usize) -> Result<Vec<C64>> {
        self.eval_with(x, |k| self.d_factor(mu, k) * self.d_factor(nu, k))
    }
}
