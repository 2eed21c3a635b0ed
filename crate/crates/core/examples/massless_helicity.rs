//! Massless prewaves of spin T/2: the helicity eigenvalue and the Weyl and
//! Penrose equations.

use gq::massless::*;
use gq::measure::*;
use gq::sample;
use gq::spinor::*;
use gq::verify::*;
use std::f64::consts::PI;

fn main() -> gq::Result<()> {
    let mut r = sample::rng(2);
    let prof = Profile::bump(ChartId::CPLUS, &[0.2, 0.3, 1.0], 0.6, cplx(1.0, 0.0));
    let k = ChartPoint::Cplus([0.25, 0.3, 0.95]).momentum(0.0);
    for (eta, chi, t) in [
        (1.0, 1.0, 1),
        (1.0, -1.0, 1),
        (-1.0, 1.0, 2),
        (-1.0, -1.0, 3),
    ] {
        let spec = MasslessSpec::new(eta, chi, t)?;
        let f = massless_section(&spec, &prof);
        let psi = penrose_prewave(&spec, &f, &k, &sample::herm(&mut r, 1.0))?;
        let hp = helicity_apply(&spec, &psi, &k)?;
        let ratio = hp[0] / psi[0];
        let jet = Jet::plane(eta, &k.four(), psi);
        let eq = Equation::Penrose { chi, t };
        let res = residual_from_jets(&eq, &[jet], Method::AnalyticUnderIntegral)?;
        println!(
            "eta={eta:+} chi={chi:+} T={t}: helicity {:+.6} (expected {:+.6}), Penrose residual {:.1e}",
            ratio.re,
            -eta * chi * t as f64 / (4.0 * PI),
            res.max_rel
        );
    }
    Ok(())
}
