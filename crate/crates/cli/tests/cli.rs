use std::process::Command;

use polaris_cli::report::Status;
use polaris_cli::run_to_report;

fn polaris(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_polaris"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
    )
}

fn report(args: &[&str]) -> polaris_cli::report::Report {
    let mut argv = vec!["polaris"];
    argv.extend_from_slice(args);
    run_to_report(argv).unwrap().1
}

#[test]
fn subhankel_exponent() {
    let (code, json) = polaris(&["subhankel", "--r", "4", "--checks", "lemma,hessian"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["checks"][1]["payload"]["exponent"], 10);
    assert_eq!(v["checks"].as_array().unwrap().len(), 2);
}

#[test]
fn dolgachev_suite_entries() {
    let r = report(&["suite", "--name", "dolgachev", "--p", "101", "--seed", "7"]);
    assert_eq!(r.exit_code(), 0);
    let verdicts: Vec<&str> = r
        .checks
        .iter()
        .map(|c| c.payload["estimate"]["verdict"]["kind"].as_str().unwrap())
        .collect();
    assert_eq!(
        verdicts,
        ["delta_eq", "delta_eq", "delta_eq", "not_dominant"]
    );
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(polaris(&["degree", "--poly", "bad~~file"]).0, 2);
    assert_eq!(polaris(&["subhankel", "--r", "1"]).0, 2);
    assert_eq!(polaris(&["suite", "--name", "nope"]).0, 2);
    assert_eq!(polaris(&["degree", "--poly", "x", "--seed", "0"]).0, 2);
    assert_eq!(polaris(&["permutti", "--r", "4"]).0, 2);
}

#[test]
fn failing_and_inconclusive_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let poly = dir.path().join("lines.txt");
    std::fs::write(&poly, "# vars = 3\nx0^2*x1 + x0*x1^2\n").unwrap();
    let p = poly.to_str().unwrap();
    assert_eq!(
        polaris(&["degree", "--poly", p, "--expect", "homaloidal"]).0,
        1
    );
    assert_eq!(
        polaris(&["degree", "--poly", p, "--expect", "not-dominant"]).0,
        0
    );
    let spec = dir.path().join("explicit.json");
    std::fs::write(
        &spec,
        r#"{"type":"permutti","r":4,"t":2,"n":3,"d":4,"m":["x3^2","x3*x4","x4^2"],"p":["x3^4","x3"]}"#,
    )
    .unwrap();
    let (code, _) = polaris(&[
        "permutti",
        "--spec",
        spec.to_str().unwrap(),
        "--zv",
        "--trials",
        "20",
    ]);
    assert_eq!(code, 0);
    let r = report(&[
        "permutti",
        "--spec",
        spec.to_str().unwrap(),
        "--zv",
        "--trials",
        "20",
    ]);
    assert_eq!(r.checks.last().unwrap().status, Status::Inconclusive);
}

#[test]
fn reports_are_deterministic() {
    for args in [
        &["suite", "--name", "ext", "--seed", "3"][..],
        &[
            "permutti", "--r", "5", "--t", "2", "--n", "3", "--d", "4", "--seed", "5", "--zv",
        ][..],
        &[
            "scroll-dual",
            "--a",
            "1",
            "--b",
            "2",
            "--seed",
            "4",
            "--verify-degree",
        ][..],
    ] {
        let mut a = vec!["--threads", "1"];
        a.extend_from_slice(args);
        let mut b = vec!["--threads", "3"];
        b.extend_from_slice(args);
        let ra = report(&a);
        let rb = report(&b);
        let strip = |s: String| {
            s.replace("\"threads\": 1", "")
                .replace("\"threads\": 3", "")
        };
        assert_eq!(
            strip(ra.deterministic_json()),
            strip(rb.deterministic_json())
        );
        assert_eq!(ra.exit_code(), 0, "{args:?}");
    }
}

#[test]
fn csv_and_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let (code, stdout) = polaris(&[
        "gn",
        "--r",
        "4",
        "--t",
        "2",
        "--m",
        "1",
        "--n",
        "3",
        "--d",
        "4",
        "--seed",
        "2",
        "--trials",
        "50",
        "--csv",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("command,check,status,summary\n"));
    assert_eq!(stdout.lines().count(), 4);
    assert!(stdout.contains("not a cone"));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v["command"], "gn");
    assert_eq!(v["config"]["r"], 4);
}
