//! Gauss–Legendre rules and the deterministic reduction used by every
//! quadrature in the crate.
//!
//! Sums are taken over fixed blocks of `BLOCK` consecutive terms in index
//! order, and the block sums are combined by a pairwise tree whose shape
//! depends only on the number of blocks. Thread count never changes the
//! result.

use crate::error::{Error, Result};
use crate::spinor::C64;
use rayon::prelude::*;
use std::f64::consts::PI;
use std::sync::OnceLock;

pub const BLOCK: usize = 1024;

/// Nodes and weights of the n-point Gauss–Legendre rule on [−1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "Gauss-Legendre order must be positive");
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut t = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, t);
            dp = d;
            let dt = p / d;
            t -= dt;
            if dt.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, t);
        if d.is_finite() {
            dp = d;
        }
        let wi = 2.0 / ((1.0 - t * t) * dp * dp);
        x[i] = -t;
        x[n - 1 - i] = t;
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    if n % 2 == 1 {
        x[n / 2] = 0.0;
    }
    (x, w)
}

// P_n(t) and P_n'(t) from the three-term recurrence.
fn legendre(n: usize, t: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, t);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * t * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (t * p1 - p0) / (t * t - 1.0);
    (p1, d)
}

/// Gauss–Legendre rule mapped to [a, b].
pub fn gauss_legendre_on(n: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre(n);
    let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
    (
        x.iter().map(|t| c + h * t).collect(),
        w.iter().map(|v| h * v).collect(),
    )
}

/// Thread pool capped by the `GQ_THREADS` environment variable.
pub fn pool() -> &'static rayon::ThreadPool {
    static POOL: OnceLock<rayon::ThreadPool> = OnceLock::new();
    POOL.get_or_init(|| {
        let n = std::env::var("GQ_THREADS")
            .ok()
            .and_then(|s| s.trim().parse::<usize>().ok())
            .filter(|&n| n > 0)
            .unwrap_or(0);
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("thread pool")
    })
}

/// Pairwise sum of `v` with a shape fixed by `v.len()`.
pub fn tree_sum(v: &[C64]) -> C64 {
    match v.len() {
        0 => C64::new(0.0, 0.0),
        1 => v[0],
        n => tree_sum(&v[..n / 2]) + tree_sum(&v[n / 2..]),
    }
}

fn tree_sum_vec(v: &[Vec<C64>], dim: usize) -> Vec<C64> {
    match v.len() {
        0 => vec![C64::new(0.0, 0.0); dim],
        1 => v[0].clone(),
        n => {
            let mut a = tree_sum_vec(&v[..n / 2], dim);
            let b = tree_sum_vec(&v[n / 2..], dim);
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        }
    }
}

/// Σ_{i<n} term(i, out) for `dim`-component terms, reduced deterministically.
///
/// `term` writes the i-th term into the zeroed buffer it is given. A
/// non-finite term aborts with the offending index.
pub fn reduce<F>(n: usize, dim: usize, term: F) -> Result<Vec<C64>>
where
    F: Fn(usize, &mut [C64]) + Sync,
{
    let blocks = n.div_ceil(BLOCK);
    let sums: Vec<Result<Vec<C64>>> = pool().install(|| {
        (0..blocks)
            .into_par_iter()
            .map(|b| {
                let mut acc = vec![C64::new(0.0, 0.0); dim];
                let mut buf = vec![C64::new(0.0, 0.0); dim];
                for i in b * BLOCK..((b + 1) * BLOCK).min(n) {
                    buf.iter_mut().for_each(|x| *x = C64::new(0.0, 0.0));
                    term(i, &mut buf);
                    for (a, x) in acc.iter_mut().zip(&buf) {
                        if !(x.re.is_finite() && x.im.is_finite()) {
                            return Err(Error::Quadrature(format!(
                                "non-finite integrand at node {i}"
                            )));
                        }
                        *a += x;
                    }
                }
                Ok(acc)
            })
            .collect()
    });
    let sums = sums.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(tree_sum_vec(&sums, dim))
}

/// Scalar form of [`reduce`].
pub fn reduce_scalar<F>(n: usize, term: F) -> Result<C64>
where
    F: Fn(usize) -> C64 + Sync,
{
    Ok(reduce(n, 1, |i, out| out[0] = term(i))?[0])
}

/// Parallel map over `0..n` collected in index order.
pub fn par_map<T: Send, F: Fn(usize) -> T + Sync + Send>(n: usize, f: F) -> Vec<T> {
    pool().install(|| (0..n).into_par_iter().map(&f).collect())
}
