//! Twistors as a model of the massless orbit: the moment map, the
//! dynamical variables and the symplectic form in a local chart.

use gq::massless::MasslessSpec;
use gq::sample;
use gq::spinor::*;
use gq::twistor::*;

fn main() -> gq::Result<()> {
    let spec = MasslessSpec::new(1.0, 1.0, 1)?;
    let mut r = sample::rng(6);
    let z = loop {
        let z = Twistor::from_components([0; 4].map(|_| sample::cnormal(&mut r)));
        if z.phi() * spec.nu() > 0.1 {
            break z;
        }
    };
    let alpha = pi_map(&spec, &z)?;
    let dv = twistor_dynvars(&spec, &z)?;
    println!("Phi = {:.6}\nP = {:?}\nW = {:?}", z.phi(), dv.p.0, dv.w.0);
    let g = standardize(&spec, &z)?;
    println!(
        "standardizing element maps q to Z: {:.2e}",
        mu1_act(&g, &Twistor::base(spec.nu()))
            .sub(&z.scale(cplx((2.0 * spec.nu() / z.phi()).sqrt(), 0.0)))
            .max_abs()
    );
    let x = AlgElem::l(3);
    println!(
        "omega0(X~) = {:.8}, -<Pi(Z), X> = {:.8}",
        omega0_pair(&spec, &z, &x),
        -pairing(&alpha, &x)
    );
    let nu = spec.nu();
    let chart = [0.1, -0.2, 2.0 * nu, 0.3, 0.0, 0.2];
    let omega = local_symplectic(&spec, &chart)?;
    println!(
        "nondegeneracy {:.3e}, closedness {:.1e}",
        two_form_nondegeneracy(&omega),
        closedness_residual(|s| local_symplectic(&spec, s), &chart, 1e-3)?
    );
    Ok(())
}
