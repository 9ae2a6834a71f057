use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_isodiam"))
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn")
}

fn run_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn");
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim().to_string()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("isodiam-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn dr_bound_prints_twelve_digits() {
    let o = run(&["dr-bound", "--m", "6", "--n", "3", "--j", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0.105409255339");
}

#[test]
fn iq_of_crosspolytope_fixture() {
    let f = fixtures().join("crosspolytope3.json");
    let o = run(&["iq", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0.166666666667");
}

#[test]
fn iwq_of_cube_fixture() {
    let f = fixtures().join("cube3.json");
    let o = run(&["iwq", f.to_str().unwrap()]);
    assert_eq!(stdout(&o), "1.00000000000");
}

#[test]
fn witness_pipes_into_check_decomposition() {
    let w = run(&["witness", "dr533"]);
    assert_eq!(w.status.code(), Some(0));
    let o = run_stdin(&["check-decomposition", "--tol", "1e-10"], &w.stdout);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn failing_decomposition_exits_one() {
    let bad = r#"{"dim": 2, "directions": [[1, 0], [0, 1]], "weights": [1, 0.5]}"#;
    let o = run_stdin(&["check-decomposition", "-"], bad.as_bytes());
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn malformed_json_reports_position() {
    let o = run_stdin(&["check-decomposition"], b"{\n  \"dim\": 2,\n  oops\n}");
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn dimension_mismatch_is_input_error() {
    let p = scratch("mismatch.json");
    std::fs::write(&p, r#"{"dim": 2, "vertices": [[0, 0], [1, 0, 0], [0, 1]]}"#).unwrap();
    let o = run(&["iq", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn missing_file_is_input_error() {
    let o = run(&["iq", "/nonexistent/body.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn dr_search_requires_seed() {
    let o = run(&["dr-search", "--m", "4", "--n", "3"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["dr-search", "--m", "4", "--n", "3", "--seed", "1", "--restarts", "2", "--iters", "200"]);
    assert_eq!(o.status.code(), Some(0));
    let again = run(&["dr-search", "--m", "4", "--n", "3", "--seed", "1", "--restarts", "2", "--iters", "200"]);
    assert_eq!(o.stdout, again.stdout);
}

#[test]
fn behrend_round_trip_is_stable() {
    let out = scratch("diamond_behrend.json");
    let cert = scratch("diamond_cert.json");
    let f = fixtures().join("diamond_2x1.json");
    let o = run(&["behrend", f.to_str().unwrap(), "--out", out.to_str().unwrap(), "--cert", cert.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let c: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    assert_eq!(c["kind"], "behrend");
    assert!(c["residual"].as_f64().unwrap() <= 1e-4);

    let iq = |p: &Path| stdout(&run(&["iq", p.to_str().unwrap()])).parse::<f64>().unwrap();
    let first = iq(&out);
    assert!((first - 0.5).abs() < 1e-9);
    let out2 = scratch("diamond_behrend2.json");
    let o = run(&["behrend", out.to_str().unwrap(), "--out", out2.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!((iq(&out2) - first).abs() < 1e-8);
}

#[test]
fn mvee_of_simplex_is_unit_ball() {
    let f = fixtures().join("regular_simplex3.json");
    let o = run(&["mvee", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let shape = v["ellipsoid"]["shape"].as_array().unwrap();
    for (i, row) in shape.iter().enumerate() {
        for (j, x) in row.as_array().unwrap().iter().enumerate() {
            let expected = if i == j { 1.0 } else { 0.0 };
            assert!((x.as_f64().unwrap() - expected).abs() < 1e-6);
        }
    }
}

#[test]
fn help_documents_schemas() {
    let o = run(&["--help"]);
    let text = stdout(&o);
    for key in ["\"vertices\"", "\"directions\"", "\"weights\"", "\"shape\"", "ISODIAM_FIXTURES"] {
        assert!(text.contains(key), "{key}");
    }
}

#[test]
fn report_records_input_digest() {
    let report = scratch("report.json");
    let f = fixtures().join("cube2.json");
    let o = run(&["--report", report.to_str().unwrap(), "iq", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let r: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(r["input_sha256"].as_str().unwrap().len(), 64);
    assert!(r["command"].as_array().unwrap().iter().any(|a| a == "iq"));
}

#[test]
fn verify_paper_uses_fixture_override() {
    let dir = scratch("fixtures");
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::copy(fixtures().join("cube3.json"), dir.join("cube3.json")).unwrap();
    let o = bin().arg("verify-paper").env("ISODIAM_FIXTURES", &dir).output().unwrap();
    let text = stdout(&o);
    assert!(text.contains("fixtures: 1"), "{text}");
    assert!(text.lines().filter(|l| l.starts_with("[PASS]") || l.starts_with("[FAIL]")).count() >= 13);
    // septagon ε = 0.05 fails its Behrend check
    assert_eq!(o.status.code(), Some(1));
}
