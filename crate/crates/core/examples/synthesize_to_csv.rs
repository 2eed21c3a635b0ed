//! Writes a sampled wave field in the command-line CSV format.

use gq::cli::{synthesize, write_csv, ParticleSpec, RunConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut cfg = RunConfig {
        particle: ParticleSpec::Dirac { m: 1.0, eta: 1.0 },
        order: 8,
        ..RunConfig::default()
    };
    cfg.grid.samples = [2, 2, 1, 1];
    let s = synthesize(&cfg)?;
    write_csv(&s, std::io::stdout())?;
    Ok(())
}
