use std::path::Path;
use std::process::Command;

use nullflat::Space;
use nullflat_cli::io::{load_curve, parse_json_curve, save_curve, Format};
use nullflat_cli::run;
use serde_json::Value;

struct Outcome {
    code: u8,
    stdout: String,
    stderr: String,
}

fn nullflat(args: &[&str]) -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("nullflat").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Outcome {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn generate_csv_rows() {
    let o = nullflat(&[
        "generate",
        "--space",
        "r21",
        "--f",
        "poly:0,0,0,1",
        "--grid",
        "0,1,11",
        "--format",
        "csv",
    ]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let lines: Vec<&str> = o.stdout.lines().collect();
    assert_eq!(lines[0], "tau,x1,x2,x3,residual");
    assert_eq!(lines.len(), 12);
    for row in &lines[1..] {
        let residual: f64 = row.rsplit(',').next().unwrap().parse().unwrap();
        assert!(residual.abs() < 1e-12);
    }
}

#[test]
fn csv_header_for_three_extras_dimension() {
    let o = nullflat(&[
        "generate",
        "--space",
        "r2n",
        "--f",
        "poly:0,0,0,1",
        "--extra",
        "poly:0,1",
        "--extra",
        "sin:1,1",
        "--extra",
        "poly:0,0,1",
        "--grid",
        "0.5,1,3",
        "--format",
        "csv",
    ]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(o.stdout.lines().next().unwrap(), "tau,x1,x2,x3,x4,x5,x6,residual");
    let o = nullflat(&[
        "generate",
        "--space",
        "r2n",
        "--f",
        "poly:0,0,0,1",
        "--extra",
        "poly:0,1",
        "--extra",
        "sin:1,1",
        "--grid",
        "0.5,1,3",
        "--format",
        "csv",
    ]);
    assert_eq!(o.stdout.lines().next().unwrap(), "tau,x1,x2,x3,x4,x5,residual");
}

#[test]
fn roundtrip_r22_report() {
    let o = nullflat(&["roundtrip", "--space", "r22", "--f", "poly:0,0,1", "--g", "poly:0"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    assert!(v["max_f_error"].as_f64().unwrap() <= 1e-9);
    assert_eq!(v["samples"], 101);
    assert_eq!(v["passed"], true);
}

#[test]
fn invert_quadratic_is_degenerate() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("quad.json");
    let o = nullflat(&[
        "generate",
        "--space",
        "r21",
        "--f",
        "poly:1,2,3",
        "--out",
        path_str(&file),
    ]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.is_empty());
    let o = nullflat(&["invert", "--in", path_str(&file)]);
    assert_eq!(o.code, 2);
    let err: Value = serde_json::from_str(&o.stderr).unwrap();
    assert_eq!(err["code"], "DegenerateGerm");
    assert_eq!(err["tau"].as_f64(), Some(0.0));
    assert!(err["message"].as_str().unwrap().contains("degenerate"));
}

#[test]
fn invert_recovers_flat_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("c.json");
    nullflat(&[
        "generate",
        "--space",
        "r22",
        "--f",
        "poly:0,0,0,1",
        "--g",
        "cos:1,1",
        "--grid",
        "0.2,1.5,7",
        "--out",
        path_str(&file),
    ]);
    let o = nullflat(&["invert", "--in", path_str(&file)]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    for s in v["samples"].as_array().unwrap() {
        let tau = s["tau"].as_f64().unwrap();
        assert!((s["tau_hat"].as_f64().unwrap() - tau).abs() < 1e-9);
        assert!((s["f_hat"].as_f64().unwrap() - tau.powi(3)).abs() < 1e-9);
        assert!((s["g_hat"].as_f64().unwrap() - tau.cos()).abs() < 1e-9);
    }
    let o = nullflat(&["invert", "--in", path_str(&file), "--format", "csv"]);
    assert_eq!(o.stdout.lines().next().unwrap(), "tau,tau_hat,f_hat,g_hat");
}

#[test]
fn invert_reversed_r2n_needs_orientation() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("rev.json");
    let o = nullflat(&[
        "generate",
        "--space",
        "r2n",
        "--f",
        "poly:0,0,0,1",
        "--extra",
        "poly:0,1+sin:1/4,1",
        "--sigma",
        "poly:0,-1",
        "--grid",
        "0.2,1,5",
        "--out",
        path_str(&file),
    ]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let check = |orientation: &str| -> f64 {
        let o = nullflat(&["invert", "--in", path_str(&file), "--orientation", orientation]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        let v: Value = serde_json::from_str(&o.stdout).unwrap();
        v["samples"]
            .as_array()
            .unwrap()
            .iter()
            .map(|s| (s["tau_hat"].as_f64().unwrap() + s["tau"].as_f64().unwrap()).abs())
            .fold(0.0, f64::max)
    };
    assert!(check("reverse") < 1e-9);
    assert!(check("forward") > 1e-3);
}

#[test]
fn json_save_load_is_lossless() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("a.json");
    let second = dir.path().join("b.json");
    nullflat(&[
        "generate",
        "--space",
        "r21",
        "--f",
        "poly:1/3,0,0,1+exp:1/7,3",
        "--sigma",
        "poly:0.1,2",
        "--grid",
        "-1,1,17",
        "--out",
        path_str(&first),
    ]);
    let curve = load_curve(&first, None).unwrap();
    save_curve(&curve, &second, Format::Json).unwrap();
    assert_eq!(load_curve(&second, None).unwrap(), curve);
    assert_eq!(std::fs::read(&first).unwrap(), std::fs::read(&second).unwrap());
}

#[test]
fn csv_load_infers_and_overrides_space() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("c.csv");
    nullflat(&[
        "generate",
        "--space",
        "r22",
        "--f",
        "poly:0,0,1",
        "--g",
        "poly:0,1",
        "--grid",
        "0,1,4",
        "--format",
        "csv",
        "--out",
        path_str(&file),
    ]);
    assert_eq!(load_curve(&file, None).unwrap().space, Space::R2n);
    let curve = load_curve(&file, Some(Space::R22)).unwrap();
    assert_eq!(curve.space, Space::R22);
    assert_eq!(curve.samples.len(), 4);
    assert!(curve.samples[0].xdot.is_empty());
    let o = nullflat(&["invert", "--in", path_str(&file), "--space", "r22"]);
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("xdot"));
}

#[test]
fn schema_errors_name_the_field() {
    let err = parse_json_curve(r#"{"space":"r21","n":1,"grid":[0,1,2],"samples":[]}"#).unwrap_err();
    assert!(err.contains("signature"), "{err}");
    let err = parse_json_curve(
        r#"{"space":"r21","n":1,"signature":{"p":2,"q":1},"grid":[0,1,1],"samples":[{"tau":0,"x":[0,0,"a"],"xdot":[],"residual":0}]}"#,
    )
    .unwrap_err();
    assert!(err.contains("samples[0].x[2]"), "{err}");

    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.json");
    std::fs::write(
        &file,
        r#"{"space":"r21","n":1,"signature":{"p":2,"q":1},"grid":[0,1,2],"samples":[{"tau":0,"x":[0,0],"xdot":[],"residual":0},{"tau":1,"x":[0,0,0],"xdot":[],"residual":0}]}"#,
    )
    .unwrap();
    let o = nullflat(&["invert", "--in", path_str(&file)]);
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("samples[0].x"), "{}", o.stderr);
}

#[test]
fn output_is_deterministic() {
    let args = [
        "generate",
        "--space",
        "r2n",
        "--f",
        "sin:1,2+poly:0,0,0,1",
        "--extra",
        "cos:1,1",
        "--grid",
        "0,2,31",
    ];
    assert_eq!(nullflat(&args).stdout, nullflat(&args).stdout);
    let v = ["verify", "--suite", "rank", "--seed", "9"];
    assert_eq!(nullflat(&v).stdout, nullflat(&v).stdout);
}

#[test]
fn plan_worked_example() {
    let o = nullflat(&[
        "plan",
        "--space",
        "r21",
        "--from",
        "0,0,0",
        "--to",
        "-2,0,2",
        "--interval",
        "0,1",
        "--samples",
        "101",
    ]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["f"], "poly:0,0,0,10,-15,6");
    assert!(v["endpoint_error"].as_f64().unwrap() <= 1e-9);
    assert_eq!(v["curve"]["samples"].as_array().unwrap().len(), 101);

    let o = nullflat(&[
        "plan",
        "--space",
        "r22",
        "--from",
        "1,2,3,4",
        "--to",
        "-1,0,5,2",
        "--interval",
        "2,3",
        "--samples",
        "5",
        "--format",
        "csv",
    ]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(o.stdout.lines().count(), 6);

    let o = nullflat(&[
        "plan",
        "--space",
        "r21",
        "--from",
        "0,0,0",
        "--to",
        "1,1,1",
        "--interval",
        "1,1",
    ]);
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("DegenerateInterval"));
    let o = nullflat(&["plan", "--space", "r21", "--from", "0,0", "--to", "1,1,1"]);
    assert_eq!(o.code, 1);
}

#[test]
fn verify_report_shape() {
    let o = nullflat(&["verify", "--suite", "jets", "--seed", "3"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["suite"], "jets");
    assert_eq!(v["failed"], 0);
    assert_eq!(v["cases"], v["passed"]);
    assert!(v["details"].as_array().unwrap().len() > 100);
    assert_eq!(nullflat(&["verify", "--suite", "nope"]).code, 1);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(nullflat(&["generate", "--bogus"]).code, 1);
    assert_eq!(nullflat(&[]).code, 1);
    assert_eq!(nullflat(&["generate", "--space", "r22", "--f", "poly:1"]).code, 1);
    assert_eq!(
        nullflat(&["generate", "--space", "r21", "--f", "poly:1", "--g", "poly:1"]).code,
        1
    );
    assert_eq!(nullflat(&["generate", "--space", "r2n", "--f", "poly:1"]).code, 1);
    assert_eq!(nullflat(&["generate", "--space", "r21", "--f", "tan:1"]).code, 1);
    assert_eq!(
        nullflat(&["generate", "--space", "r21", "--f", "poly:1", "--grid", "1,0,5"]).code,
        1
    );
    assert_eq!(nullflat(&["invert", "--in", "/nonexistent/curve.json"]).code, 1);
}

#[test]
fn degenerate_reparametrization_exits_two() {
    let o = nullflat(&[
        "generate",
        "--space",
        "r21",
        "--f",
        "poly:0,0,0,1",
        "--sigma",
        "poly:0,0,1",
        "--grid",
        "-1,1,5",
    ]);
    assert_eq!(o.code, 2);
    let err: Value = serde_json::from_str(&o.stderr).unwrap();
    assert_eq!(err["code"], "SigmaNotMonotone");
    assert_eq!(err["tau"].as_f64(), Some(0.0));
}

#[test]
fn every_subcommand_has_help() {
    for sub in ["generate", "invert", "roundtrip", "plan", "verify"] {
        let o = nullflat(&[sub, "--help"]);
        assert_eq!(o.code, 0);
        assert!(o.stdout.contains("Usage"), "{sub}");
    }
}

#[test]
fn environment_overrides() {
    let bin = env!("CARGO_BIN_EXE_nullflat");
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("c.json");
    let status = Command::new(bin)
        .args([
            "generate",
            "--space",
            "r21",
            "--f",
            "poly:0,0,0,1",
            "--grid",
            "0.5,1,3",
            "--out",
            path_str(&file),
        ])
        .status()
        .unwrap();
    assert!(status.success());

    let out = Command::new(bin)
        .args(["invert", "--in", path_str(&file)])
        .env("NULLFLAT_EPS_DEN", "1e6")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    let out = Command::new(bin)
        .args(["generate", "--space", "r21", "--f", "poly:0,0,0,1", "--grid", "0,1,3"])
        .env("NULLFLAT_JET_ORDER", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));

    let out = Command::new(bin)
        .args(["generate", "--space", "r21", "--f", "poly:0,0,0,1", "--grid", "0,1,3"])
        .env("NULLFLAT_JET_ORDER", "8")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}
