//! The group acting on momentum-space functions and on waves: the
//! homomorphism property, unitarity and the momentum operators.

use gq::measure::*;
use gq::rep::*;
use gq::sample;
use gq::spinor::*;

fn main() -> gq::Result<()> {
    let prof = Profile::bump(ChartId::HM, &[0.3, -0.2, 0.1], 0.8, cplx(1.0, 0.3));
    let f = RepFunction::klein_gordon(1.2, 1.0, prof.clone());
    let mut r = sample::rng(9);
    let (g1, g2) = (sample::group(&mut r, 0.2), sample::group(&mut r, 0.2));
    let p = f.carrier.point_of(&ChartPoint::Hm([0.3, -0.1, 0.2]))?;
    let lhs = rep_on_f(&g1, &rep_on_f(&g2, &f)).eval(&p)?;
    let rhs = rep_on_f(&g1.mul(&g2), &f).eval(&p)?;
    println!("homomorphism defect {:.1e}", (lhs - rhs).norm());
    let grid = build_grid(&prof, 16, f.carrier.measure())?;
    let norm = inner(&f, &f, &grid)?;
    let moved = inner_transformed(&g1, &f, &f, &grid)?;
    println!("<f, f> = {:.10}, after g: {:.10}", norm.re, moved.re);
    let sum = wave_synth(&f, &grid)?;
    let step = 5e-3;
    let field = SampledField::sample(
        FourVector::new(-0.01, -0.01, -0.01, -0.01),
        step,
        [5; 4],
        1,
        |x| sum.eval(x),
    )?;
    for k in 1..=4 {
        let op = wave_operator(&AlgElem::p(k), &f.carrier, &field)?;
        let mult = momentum_weighted_wave(k, &f, &grid)?;
        let want = SampledField::sample(op.origin, op.step, op.n, op.dim, |x| mult.eval(x))?;
        println!(
            "P^{k}: operator vs multiplied profile {:.1e}",
            relative_difference(&want, &op)?
        );
    }
    Ok(())
}
