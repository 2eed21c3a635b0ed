//! A Dirac wave from a section over the massive spinor bundle, with the
//! Dirac operator applied by finite differences.

use gq::massive::*;
use gq::measure::*;
use gq::spinor::*;
use gq::verify::*;

fn main() -> gq::Result<()> {
    let (m, eta) = (1.5, -1.0);
    let spec = MassiveSpec::new(m, eta, 1)?;
    let prof = Profile::bump(
        ChartId::HM_P1_S,
        &[0.2, 0.0, 0.1, 0.3, -0.2],
        0.7,
        cplx(1.0, 0.0),
    );
    let f = massive_section(&spec, &prof);
    let grid = build_grid(&prof, 8, Measure::Mu { m })?;
    let sum = dirac_synth(&f, &grid)?;
    let x = FourVector::new(0.1, -0.2, 0.0, 0.3);
    for (i, c) in sum.eval(x)?.iter().enumerate() {
        println!("psi_{i}(x) = {c:.6e}");
    }
    let field = |x: FourVector| sum.eval(x);
    let rep = dirac_residual(
        m,
        eta,
        &Source::Field {
            field: &field,
            step: 1e-3,
        },
        &[x],
    )?;
    println!(
        "Dirac residual {:.2e} ({} nodes)",
        rep.max_rel,
        sum.nodes.len()
    );
    Ok(())
}
