use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use twistkit::fixtures::level30;

fn twistkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twistkit"))
        .args(args)
        .env_remove("TWISTKIT_SEED")
        .output()
        .expect("binary runs")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json_of(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn gsp_identity_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("id.json");
    std::fs::write(&m, "[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]").unwrap();
    let o = twistkit(&["--json", "gsp", "check", "--matrix", path(&m), "--modulus", "6"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json_of(&o);
    assert_eq!(v["schema"], "twistkit/1");
    assert_eq!(v["command"], "gsp check");
    assert_eq!(v["status"], "ok");
    assert!(v.get("report").is_some());
}

#[test]
fn malformed_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"label\": ").unwrap();
    let o = twistkit(&["newform", "check", "--in", path(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bad.json"));

    let o = twistkit(&["--json", "newform", "check", "--in", path(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    let v = json_of(&o);
    assert_eq!(v["status"], "error");
    assert!(v["error"].is_string() || v["error"].is_object());

    let o = twistkit(&["--bound", "1", "verify-paper-examples"]);
    assert_eq!(o.status.code(), Some(2));
    let o = twistkit(&["no-such-command"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verification_failure_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let pair = level30().unwrap();
    let f = dir.path().join("f.json");
    let g = dir.path().join("g.json");
    std::fs::write(&f, pair.left.to_json().to_string()).unwrap();
    std::fs::write(&g, pair.right.to_json().to_string()).unwrap();
    let o = twistkit(&["newform", "check", "--in", path(&f)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    // g carries the declared nebentypus, under which the relation at 49 fails
    let o = twistkit(&["newform", "check", "--in", path(&g)]);
    assert_eq!(o.status.code(), Some(1));
    // weights (2, 2) fail the strict rule
    let o = twistkit(&["yoshida", "build", "--left", path(&f), "--right", path(&g)]);
    assert_eq!(o.status.code(), Some(1));
    let out = dir.path().join("lift.json");
    let o = twistkit(&["--relaxed-weights", "yoshida", "build", "--left", path(&f), "--right", path(&g), "--out", path(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(out.exists());
}

#[test]
fn paper_examples_pass_and_are_deterministic() {
    let a = twistkit(&["--json", "verify-paper-examples"]);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    let b = twistkit(&["--json", "verify-examples"]);
    assert_eq!(a.stdout, b.stdout);
    let v = json_of(&a);
    assert_eq!(v["command"], "verify-paper-examples");
    let checks = v["report"]["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["status"] != "fail"));

    let text = twistkit(&["verify-paper-examples"]);
    let s = String::from_utf8_lossy(&text.stdout);
    assert!(!s.lines().any(|l| l.starts_with("FAIL")));
    assert!(s.contains("0 failed"));
}

#[test]
fn synthetic_seed_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("spec.json");
    std::fs::write(
        &spec,
        r#"{"field": {"poly": [2, 0, 1]}, "level": 8, "weight": 2, "seed": 5, "prime_bound": 60,
            "twists": [{"image": {"rep": [0, -1]}, "char": {"modulus": 8, "gens": [7, 5], "values": [1, -1]}}]}"#,
    )
    .unwrap();
    let run = |extra: &[&str], env: Option<&str>| {
        let out = dir.path().join("e.json");
        let mut c = Command::new(env!("CARGO_BIN_EXE_twistkit"));
        c.args(["twists", "synth", "--spec", path(&spec), "--out", path(&out)]).args(extra);
        match env {
            Some(s) => c.env("TWISTKIT_SEED", s),
            None => c.env_remove("TWISTKIT_SEED"),
        };
        let o = c.output().unwrap();
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        std::fs::read_to_string(out).unwrap()
    };
    let file = run(&[], None);
    assert_eq!(file, run(&[], None));
    assert_eq!(run(&["--seed", "5"], Some("9")), file);
    assert_eq!(run(&[], Some("5")), file);
    assert_ne!(run(&[], Some("9")), file);

    let e = dir.path().join("e.json");
    let o = twistkit(&["--json", "--bound", "60", "twists", "detect", "--in", path(&e)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(json_of(&o)["report"]["order"], 2);
}
