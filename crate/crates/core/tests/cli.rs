use std::io::Write;
use std::process::{Command, Stdio};

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn lfcheck(args: &[&str], stdin: &str) -> Run {
    let mut child = Command::new(env!("CARGO_BIN_EXE_lfcheck"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn build(args: &[&str]) -> String {
    let r = lfcheck(args, "");
    assert_eq!(r.code, 0, "{}", r.stderr);
    r.stdout
}

#[test]
fn built_factorizations_verify() {
    let f = build(&["build", "theorem1", "--g", "4"]);
    for verb in ["verify", "torelli", "minimal"] {
        let r = lfcheck(&[verb], &f);
        assert_eq!(r.code, 0, "{verb}: {}", r.stdout);
        assert!(r.stdout.contains("pass"));
    }
}

#[test]
fn xn_homology_line() {
    let f = build(&["build", "xn", "--g", "3", "--n", "2"]);
    let r = lfcheck(&["h1"], &f);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout.lines().next(), Some("Z/2 + Z^9"));
}

#[test]
fn exit_codes_distinguish_refutation_from_bad_input() {
    let f = build(&["build", "theorem1", "--g", "3"]);
    let broken = f.replacen("\"power\": 2", "\"power\": 1", 1);
    assert_ne!(broken, f);
    let r = lfcheck(&["verify"], &broken);
    assert_eq!(r.code, 1, "{}", r.stdout);
    assert!(r.stdout.contains("FAIL"));

    let r = lfcheck(&["verify"], "{ not json");
    assert_eq!(r.code, 2);
    assert!(r.stdout.contains("parse error"));
}

#[test]
fn json_reports_roundtrip_verdicts() {
    let f = build(&["build", "theorem1", "--g", "3"]);
    let r = lfcheck(&["--format", "json", "certify", "--samples", "40"], &f);
    assert_eq!(r.code, 0);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    let names: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["relation", "well-defined", "peripherals", "kernel loops", "projection"]);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["verdict"] == "pass"));
}

#[test]
fn seeded_runs_are_deterministic() {
    let f = build(&["build", "theorem1", "--g", "3"]);
    let args = ["--seed", "7", "pullback", "--random", "3", "--certify", "--samples", "30"];
    let a = lfcheck(&args, &f);
    let b = lfcheck(&args, &f);
    assert_eq!(a.code, 0, "{}", a.stdout);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn pullback_reports_mn_critical_points() {
    let f = build(&["build", "theorem1", "--g", "3"]);
    let r = lfcheck(&["--format", "json", "pullback", "--cyclic", "4"], &f);
    assert_eq!(r.code, 0, "{}", r.stdout);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["value"], "base genus 5, 8 critical points");
    assert_eq!(v["checks"][0]["detail"], "8 = 4 x 2");
}

#[test]
fn fiber_sum_seam_and_certificate() {
    let dir = std::env::temp_dir().join(format!("lfcheck-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("t1.json");
    std::fs::write(&path, build(&["build", "theorem1", "--g", "3"])).unwrap();
    let p = path.to_str().unwrap();

    let r = lfcheck(&["fibersum", p, p, "--seam"], "");
    assert_eq!(r.code, 0, "{}", r.stdout);

    let sum = lfcheck(&["fibersum", p, p], "");
    assert_eq!(sum.code, 0);
    assert_eq!(lfcheck(&["verify"], &sum.stdout).code, 0);
    // the summed push model lives over genus 4, so the projection item cannot pass
    assert_eq!(lfcheck(&["certify", "--samples", "10"], &sum.stdout).code, 1);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn small_verbs() {
    let r = lfcheck(&["word", "ut-reduce", "--g0", "3", "at1 bt1 at1^-1 bt1^-1 at2 bt2 at2^-1 bt2^-1 at3 bt3 at3^-1 bt3^-1"], "");
    assert_eq!(r.stdout.lines().next(), Some("t^4"));
    let r = lfcheck(&["cl-bounds", "--g", "3", "--k", "2"], "");
    assert_eq!(r.stdout.lines().next(), Some("lower = 2, upper = 2"));
    assert_eq!(lfcheck(&["braid", "equal", "--n", "3", "s1 s2 s1", "s2 s1 s2"], "").code, 0);
    assert_eq!(lfcheck(&["braid", "equal", "--n", "3", "s1 s2", "s2 s1"], "").code, 1);
    assert_eq!(lfcheck(&["raag", "forgetful-check", "--n", "3", "--p", "1"], "").code, 0);
}

#[test]
fn theorem3_without_phi_reports_pending_monodromy() {
    let r = lfcheck(&["build", "theorem3", "--g", "4", "--p", "3"], "");
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert!(r.stdout.contains("note:"));
}
