use gq::orbit::*;
use gq::sample;
use gq::spinor::*;
use serde_json::Value;
use std::io::Write;
use std::process::{Command, Output, Stdio};

fn gq(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_gq"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn matrix(m: &M2) -> Value {
    let e = |i, j| {
        let z: C64 = m[(i, j)];
        serde_json::json!([z.re, z.im])
    };
    serde_json::json!([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
}

fn coform_json(alpha: &CoForm) -> String {
    serde_json::json!({ "a": matrix(&alpha.a), "k": matrix(&alpha.k) }).to_string()
}

fn classify_type(alpha: &CoForm) -> u64 {
    let out = gq(&["classify"], &coform_json(alpha));
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    v["type"].as_u64().unwrap()
}

#[test]
fn classify_reports_types_and_exit_codes() {
    let row5 = canonical_rep(&row_type(5, 1.0, 1.0, 1.0, 1)).unwrap().alpha;
    assert_eq!(classify_type(&row5), 5);
    let mut r = sample::rng(3);
    for id in [3u8, 4, 7, 9] {
        let alpha = canonical_rep(&row_type(id, 1.0, -1.0, 1.0, 2))
            .unwrap()
            .alpha;
        let moved = coadjoint(&sample::group(&mut r, 0.5), &alpha);
        assert_eq!(classify_type(&moved), classify_type(&alpha));
    }
    assert_eq!(
        gq(&["classify"], &coform_json(&CoForm::zero()))
            .status
            .code(),
        Some(3)
    );
    assert_eq!(gq(&["classify"], "{\"a\": [1, 2").status.code(), Some(2));
    let out = gq(
        &["invariants"],
        "{\"P\":[0,0,0,2],\"l\":[0,0,0],\"g\":[0,0,0]}",
    );
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["mass_sq"].as_f64(), Some(4.0));
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(String::from).collect())
        .collect()
}

#[test]
fn synthesize_row_counts_and_components() {
    let out = gq(&["synthesize", "--particle", "kg"], "");
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l == "x1,x2,x3,x4,component,re,im"));
    assert!(text.starts_with("# library: \"gq "));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 512);
    let x: f64 = rows[1][0].parse().unwrap();
    assert_eq!(x, -0.5 + 1.0 / 7.0);
    assert_eq!(
        rows[1][0]
            .split('e')
            .next()
            .unwrap()
            .replace(['-', '.'], "")
            .len(),
        17
    );
    for (kind, comps) in [("dirac", 4usize), ("photon", 3)] {
        let out = gq(
            &["synthesize", "--particle", kind, "--samples", "2,2,1,1"],
            "",
        );
        assert_eq!(
            out.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        let rows = csv_rows(&String::from_utf8(out.stdout).unwrap());
        assert_eq!(rows.len(), 4 * comps);
        assert_eq!(
            rows.iter().map(|r| r[4].parse::<usize>().unwrap()).max(),
            Some(comps - 1)
        );
    }
}

#[test]
fn flags_override_config_files() {
    let path = std::env::temp_dir().join(format!("gq-cli-{}.json", std::process::id()));
    std::fs::write(&path, r#"{"particle":{"kind":"massless","eta":-1,"chi":1,"T":2},"grid":{"samples":[3,1,1,1]},"order":8}"#).unwrap();
    let p = path.to_str().unwrap();
    let out = gq(&["synthesize", "--config", p, "--format", "json"], "");
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["metadata"]["particle"]["T"], 2);
    assert_eq!(v["points"].as_array().unwrap().len(), 3);
    assert_eq!(v["points"][0]["values"].as_array().unwrap().len(), 4);
    let out = gq(
        &[
            "synthesize",
            "--config",
            p,
            "--format",
            "json",
            "--spin-t",
            "1",
            "--order",
            "6",
        ],
        "",
    );
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["metadata"]["quadrature"]["order"], 6);
    assert_eq!(v["points"][0]["values"].as_array().unwrap().len(), 2);
    std::fs::remove_file(&path).ok();
    assert_eq!(
        gq(&["synthesize", "--order", "0"], "").status.code(),
        Some(2)
    );
    assert_eq!(
        gq(&["synthesize", "--samples", "2,2"], "").status.code(),
        Some(2)
    );
}

#[test]
fn verify_suites_and_exit_codes() {
    for suite in ["kg", "photon-gauge"] {
        let out = gq(&["verify", suite], "");
        assert_eq!(out.status.code(), Some(0), "{suite}");
        let v: Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(v["pass"], true);
    }
    assert_eq!(gq(&["verify", "no-such-suite"], "").status.code(), Some(2));
    // The contact suite carries the unattainable volume coefficient.
    assert_eq!(gq(&["verify", "contact"], "").status.code(), Some(1));
}

#[test]
fn quadrature_failure_exits_with_four() {
    let path = std::env::temp_dir().join(format!("gq-cli-zero-{}.json", std::process::id()));
    std::fs::write(&path, r#"{"profile":{"kind":"bump","chart":"HM","center":[0,0,0],"radius":0.5,"amplitude":[0,0]}}"#).unwrap();
    let out = gq(&["synthesize", "--config", path.to_str().unwrap()], "");
    std::fs::remove_file(&path).ok();
    assert_eq!(
        out.status.code(),
        Some(4),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}
