//! Closed-form exponential of the Lie algebra against a Runge-Kutta
//! integration of the left-invariant flow.

use gq::sample;
use gq::spinor::*;
use gq::suite::rk4_flow;

fn main() {
    let mut r = sample::rng(3);
    for _ in 0..5 {
        let x = sample::alg(&mut r, 1.0);
        let t = sample::uniform(&mut r, -2.0, 2.0);
        let g = alg_exp(&x, t);
        let (a, h) = rk4_flow(&x, t, 4000);
        let err = max_abs(&(*g.a - a)).max(max_abs(&(*g.h - h)));
        println!(
            "t = {t:+.3}  det A = {:.15}  |exp - rk4| = {err:.2e}",
            g.a.determinant().re
        );
    }
}
