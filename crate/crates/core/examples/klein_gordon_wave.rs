//! Synthesizes a Klein-Gordon wave from a momentum bump and checks the
//! equation analytically and by finite differences.

use gq::massive::*;
use gq::measure::*;
use gq::spinor::*;
use gq::verify::*;

fn main() -> gq::Result<()> {
    let spec = MassiveSpec::new(1.0, 1.0, 0)?;
    let f = Profile::bump(ChartId::HM, &[0.3, -0.2, 0.1], 0.8, cplx(1.0, 0.0));
    let grid = build_grid(&f, 24, Measure::Nu { m: spec.m })?;
    let sum = kg_synth(&spec, &f, &grid)?;
    for t in [0.0, 0.5, 1.0] {
        let x = FourVector::new(0.0, 0.0, 0.0, t);
        println!("psi(0, {t}) = {:.6}", sum.eval(x)?[0]);
    }
    let pts = spatial_grid(4, -0.5, 0.5, 0.2);
    let exact = kg_residual(spec.m, &Source::Synth(&sum), &pts)?;
    let field = |x: FourVector| sum.eval(x);
    let fd = kg_residual(
        spec.m,
        &Source::Field {
            field: &field,
            step: 1e-3,
        },
        &pts,
    )?;
    println!(
        "residual: analytic {:.2e}, finite difference {:.2e}",
        exact.max_rel, fd.max_rel
    );
    Ok(())
}
