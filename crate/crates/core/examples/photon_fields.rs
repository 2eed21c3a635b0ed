//! Photon wave functions: gauge invariance, electric and magnetic fields,
//! and the Lorenz gauge of the synthesized potential.

use gq::photon::*;
use gq::spinor::*;
use gq::suite::demo_photon_field;
use gq::verify::*;

fn main() -> gq::Result<()> {
    let a = demo_photon_field()?;
    let k = h_map(FourVector::new(
        0.2,
        0.3,
        0.95,
        (0.04f64 + 0.09 + 0.9025).sqrt(),
    ));
    let s = sym_fiber(&k, 1.0)?;
    let shifted = a.gauge_shift(|k| id2() * cplx(k.trace(), 0.5));
    println!(
        "f_A = {:.6}, f_(A+LK) = {:.6}",
        f_from_field(&a, &s)?,
        f_from_field(&shifted, &s)?
    );
    let em = em_at_cone(&a, &k);
    println!("E = {:.4?}\nB = {:.4?}", em.e, em.b);
    let grid = a.grid(12)?;
    let spec = PhotonSpec::new(-1.0, 1.0)?;
    let x = FourVector::new(0.1, 0.0, -0.2, 0.3);
    let w = photon_wave(&spec, &a, x, &grid)?;
    let c = photon_wave_from_em(&spec, &a, x, &grid)?;
    println!(
        "wave vs field form: {:.2e}",
        max_abs(&(w - c)) / max_abs(&w)
    );
    let pot = potential_synth(spec.eta, &a, &grid)?;
    println!(
        "Lorenz residual {:.2e}",
        lorenz_gauge_residual(&Source::Synth(&pot), &[x])?.max_rel
    );
    Ok(())
}
