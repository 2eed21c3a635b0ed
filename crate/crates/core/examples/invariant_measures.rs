//! Lorentz invariance of the measures on the mass hyperboloid, the cone and
//! the massive spinor bundle.

use gq::measure::*;
use gq::sample;
use gq::spinor::*;

fn main() -> gq::Result<()> {
    let mut r = sample::rng(4);
    let cases = [
        (
            Profile::bump(ChartId::HM, &[0.3, -0.2, 0.1], 0.8, cplx(1.0, 0.0)),
            Measure::Nu { m: 1.2 },
            24,
        ),
        (
            Profile::bump(ChartId::CPLUS, &[0.2, 0.3, 1.0], 0.6, cplx(1.0, 0.0)),
            Measure::Omega,
            24,
        ),
        (
            Profile::bump(
                ChartId::HM_P1_S,
                &[0.2, 0.0, 0.1, 0.3, -0.2],
                0.7,
                cplx(1.0, 0.0),
            ),
            Measure::Mu { m: 1.0 },
            10,
        ),
    ];
    for (prof, meas, order) in cases {
        let grid = build_grid(&prof, order, meas)?;
        let f = |pt: &ChartPoint| prof.eval_point(pt);
        let base = integrate(f, &grid)?;
        let a = sample::sl2(&mut r, 0.1);
        let moved = integrate_composed(f, &a, &grid)?;
        println!(
            "{:?}: integral {:.10}, relative change under A {:.2e}",
            meas.id(),
            base.re,
            (moved - base).norm() / base.norm()
        );
    }
    Ok(())
}
