use clap::{Parser, Subcommand, ValueEnum};
use gq::cli::{self, exit, Failure, RunConfig};
use gq::suite;
use serde_json::{json, Value};
use std::io::{Read, Write};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "gq",
    version,
    about = "Orbit classification, wave synthesis and verification suites"
)]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Kg,
    Dirac,
    Massless,
    Photon,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a dual element read as JSON from FILE or stdin.
    Classify { file: Option<PathBuf> },
    /// Print the dynamical variables and Casimirs of a dual element.
    Invariants { file: Option<PathBuf> },
    /// Sample a synthesized wave field on a spacetime grid.
    Synthesize {
        /// JSON run configuration; flags override its values.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, value_enum)]
        particle: Option<Kind>,
        #[arg(long)]
        m: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        eta: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        chi: Option<f64>,
        #[arg(long = "spin-t")]
        t: Option<u32>,
        /// Gauss-Legendre nodes per momentum axis.
        #[arg(long)]
        order: Option<usize>,
        /// Samples per axis x1,x2,x3,x4.
        #[arg(long, value_delimiter = ',')]
        samples: Option<Vec<usize>>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        origin: Option<Vec<f64>>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        extent: Option<Vec<f64>>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        /// Output file (stdout when absent).
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite (or "all") and print a JSON report.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
}

fn read_input(file: &Option<PathBuf>) -> Result<String, Failure> {
    match file {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p).map_err(Failure::input),
        _ => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(Failure::input)?;
            Ok(s)
        }
    }
}

fn sink(out: &Option<PathBuf>) -> Result<Box<dyn Write>, Failure> {
    Ok(match out {
        Some(p) => Box::new(std::fs::File::create(p).map_err(Failure::input)?),
        None => Box::new(std::io::stdout().lock()),
    })
}

/// A closed downstream pipe is not an error.
fn finish(r: std::io::Result<()>) -> Result<(), Failure> {
    match r {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Failure::input(e)),
        _ => Ok(()),
    }
}

fn print_json(v: &Value, out: &Option<PathBuf>) -> Result<(), Failure> {
    let mut w = sink(out)?;
    finish(
        serde_json::to_writer_pretty(&mut w, v)
            .map_err(std::io::Error::from)
            .and_then(|_| writeln!(w)),
    )
}

fn run(args: Args) -> Result<i32, Failure> {
    match args.command {
        Command::Classify { file } => {
            let alpha = cli::parse_coform(&read_input(&file)?)?;
            print_json(&cli::classify_json(&alpha)?, &None)?;
            Ok(exit::OK)
        }
        Command::Invariants { file } => {
            let alpha = cli::parse_coform(&read_input(&file)?)?;
            print_json(&cli::invariants_json(&alpha), &None)?;
            Ok(exit::OK)
        }
        Command::Synthesize {
            config,
            particle,
            m,
            eta,
            chi,
            t,
            order,
            samples,
            origin,
            extent,
            seed,
            format,
            out,
        } => {
            for (name, v) in [
                ("samples", samples.as_ref().map(Vec::len)),
                ("origin", origin.as_ref().map(Vec::len)),
                ("extent", extent.as_ref().map(Vec::len)),
            ] {
                if v.is_some_and(|n| n != 4) {
                    return Err(Failure::input(format!(
                        "--{name} takes four comma-separated values"
                    )));
                }
            }
            let text = config
                .as_ref()
                .map(|p| std::fs::read_to_string(p).map_err(Failure::input))
                .transpose()?;
            let mut ov: Vec<(&str, Value)> = vec![];
            if let Some(k) = particle {
                let name = match k {
                    Kind::Kg => "kg",
                    Kind::Dirac => "dirac",
                    Kind::Massless => "massless",
                    Kind::Photon => "photon",
                };
                ov.push(("particle.kind", json!(name)));
            }
            let fields = [
                ("particle.m", m.map(|v| json!(v))),
                ("particle.eta", eta.map(|v| json!(v))),
                ("particle.chi", chi.map(|v| json!(v))),
                ("particle.T", t.map(|v| json!(v))),
                ("order", order.map(|v| json!(v))),
                ("seed", seed.map(|v| json!(v))),
                ("grid.samples", samples.map(|v| json!(v))),
                ("grid.origin", origin.map(|v| json!(v))),
                ("grid.extent", extent.map(|v| json!(v))),
            ];
            ov.extend(fields.into_iter().filter_map(|(k, v)| v.map(|v| (k, v))));
            let cfg = RunConfig::layered(text.as_deref(), &ov)?;
            let synth =
                cli::synthesize(&cfg).map_err(|e| Failure::new(exit::QUADRATURE, e.to_string()))?;
            let w = sink(&out)?;
            finish(match format {
                Format::Csv => cli::write_csv(&synth, w),
                Format::Json => cli::write_json(&synth, w),
            })?;
            Ok(exit::OK)
        }
        Command::Verify {
            suite: tag,
            seed,
            out,
        } => {
            let tags: Vec<&str> = if tag == "all" {
                suite::SUITES.iter().map(|(t, _)| *t).collect()
            } else if suite::criterion_of(&tag).is_some() {
                vec![tag.as_str()]
            } else {
                let known: Vec<&str> = suite::SUITES.iter().map(|(t, _)| *t).collect();
                return Err(Failure::input(format!(
                    "unknown suite {tag:?}; known: all, {}",
                    known.join(", ")
                )));
            };
            let mut reports = vec![];
            for t in tags {
                reports.push(
                    suite::run(t, seed)
                        .map_err(|e| Failure::new(exit::CHECK_FAILED, format!("{t}: {e}")))?,
                );
            }
            let pass = reports.iter().all(|r| r.pass);
            print_json(&json!({ "pass": pass, "suites": reports }), &out)?;
            Ok(if pass { exit::OK } else { exit::CHECK_FAILED })
        }
    }
}

fn main() {
    let args = Args::try_parse().unwrap_or_else(|e| {
        let _ = e.print();
        std::process::exit(if e.use_stderr() {
            exit::BAD_INPUT
        } else {
            exit::OK
        })
    });
    match run(args) {
        Ok(code) => std::process::exit(code),
        Err(f) => {
            eprintln!("gq: {}", f.message);
            std::process::exit(f.code)
        }
    }
}
