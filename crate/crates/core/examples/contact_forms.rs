//! Contact forms on the Klein-Gordon and Dirac evolution spaces, pulled
//! back numerically through their sections.

use gq::sample;
use gq::twistor::*;

fn main() -> gq::Result<()> {
    let mut r = sample::rng(8);
    let p: Vec<f64> = (0..6)
        .map(|_| sample::normal(&mut r))
        .chain([0.1])
        .collect();
    for (m, eta) in [(1.0, 1.0), (2.0, -1.0)] {
        let fam = ContactFamily::KleinGordon { m, eta, tau: 0.0 };
        let rep = contact_pullback_check(&fam, std::slice::from_ref(&p))?;
        println!(
            "KG m={m} eta={eta:+}: pullback vs closed form {:.1e}, volume coefficient {:.6}",
            rep.max_abs,
            kg_volume_coefficient(m, eta, &p)?
        );
    }
    let q: Vec<f64> = (0..9)
        .map(|i| if i < 4 { 0.7 } else { 0.3 * i as f64 })
        .collect();
    let fam = ContactFamily::Dirac {
        m: 1.0,
        eta: 1.0,
        t: 1,
    };
    println!(
        "Dirac: pullback vs closed form {:.1e}",
        contact_pullback_check(&fam, &[q])?.max_abs
    );
    Ok(())
}
