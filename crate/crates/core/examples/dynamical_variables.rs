//! Momentum, angular momentum, boost and Pauli-Lubanski vectors of a dual
//! element, and their behaviour under the coadjoint action.

use gq::sample;
use gq::spinor::*;
use std::f64::consts::PI;

fn main() {
    let m = 1.3;
    let alpha = CoForm {
        a: sigma(3) * cplx(0.0, 1.0 / (8.0 * PI)),
        k: Herm2::project(id2().scale(m)),
    };
    let d = dyn_vars(&alpha);
    println!("P = {:?}\nl = {:?}\ng = {:?}", d.p.0, d.l, d.g);
    println!("W = {:?}", pauli_lubanski(&alpha).0);
    let (p2, w2) = orbit_invariants(&alpha);
    println!(
        "|P| = {p2:.6}  |W| = {w2:.6e}  (m/4pi)^2 = {:.6e}",
        (m / (4.0 * PI)).powi(2)
    );
    let g = sample::group(&mut sample::rng(5), 0.8);
    let (q2, v2) = orbit_invariants(&coadjoint(&g, &alpha));
    println!("after a random transport: |P| = {q2:.6}  |W| = {v2:.6e}");
}
