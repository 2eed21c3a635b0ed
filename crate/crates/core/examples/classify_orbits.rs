//! Classifies the canonical representative of every orbit type and a
//! transported copy of it.

use gq::orbit::*;
use gq::sample;
use gq::spinor::*;

fn main() -> gq::Result<()> {
    let mut r = sample::rng(1);
    println!("type  |P|          |W|          moved  quantizability");
    for id in 1..=9u8 {
        let rep = canonical_rep(&row_type(id, 1.0, 1.0, 1.0, 1))?;
        let t = classify(&rep.alpha, DEFAULT_TOL)?;
        let moved = coadjoint(&sample::group(&mut r, 0.5), &rep.alpha);
        let m = classify(&moved, DEFAULT_TOL)?;
        println!(
            "{:>4}  {:>+11.4e}  {:>+11.4e}  {:>5}  {:?}",
            t.type_id,
            t.mass_sq,
            t.w_sq,
            m.type_id,
            quantizability(&t)
        );
    }
    Ok(())
}
