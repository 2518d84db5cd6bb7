use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::Value;

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn supercone(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_supercone"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn supercone");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    Output {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn json(line: &str) -> Value {
    serde_json::from_str(line).unwrap_or_else(|e| panic!("{e}: {line}"))
}

#[test]
fn census_streams_entries_then_summary() {
    let out = supercone(&["census", "--m", "1", "--n", "1"], "");
    assert_eq!(out.code, 0);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(lines.len(), 4);
    assert_eq!(json(lines[3])["orbit_count"], 3);

    let out = supercone(&["census", "--m", "3", "--n", "3"], "");
    assert_eq!(json(out.stdout.lines().last().unwrap())["orbit_count"], 27);
    let out = supercone(&["census", "--m", "2", "--n", "3", "--ds-only"], "");
    assert_eq!(out.code, 0);
}

#[test]
fn member_reports_cone_and_variety() {
    let zero = r#"{"m":2,"n":1,"xplus":[["0"],["0"]],"xminus":[["0","0"]]}"#;
    let out = supercone(&["member", "--kind", "gl(2|1)"], zero);
    assert_eq!(out.code, 0);
    let v = json(out.stdout.trim());
    assert_eq!(v["in_nilcone"], true);
    assert_eq!(v["in_X"], true);

    // In the cone but not self-commuting: X⁺X⁻ ≠ 0.
    let x = r#"{"m":1,"n":1,"xplus":[["1"]],"xminus":[["0"]]}"#;
    assert_eq!(supercone(&["member", "--kind", "gl(1|1)"], x).code, 0);
    let y = r#"{"m":2,"n":1,"xplus":[["1"],["0"]],"xminus":[["0","1"]]}"#;
    let out = supercone(&["member", "--kind", "gl(2|1)", "--self-commuting"], y);
    assert_eq!(out.code, 1);
    let v = json(out.stdout.trim());
    assert_eq!(v["in_nilcone"], true);
    assert_eq!(v["in_X"], false);
}

#[test]
fn exit_codes_distinguish_false_from_malformed() {
    let unit = r#"{"m":1,"n":1,"xplus":[["1"]],"xminus":[["1"]]}"#;
    assert_eq!(supercone(&["member", "--kind", "gl(1|1)"], unit).code, 1);

    let malformed = supercone(&["member", "--kind", "gl(1|1)"], "[1, 2");
    assert_eq!(malformed.code, 2);
    assert!(malformed.stderr.contains("malformed"));
    let shape = supercone(&["member", "--kind", "gl(3|1)"], unit);
    assert_eq!(shape.code, 2);
    assert!(shape.stderr.contains("shape mismatch"));
    assert_eq!(supercone(&["member", "--kind", "gl(1"], unit).code, 2);
    let canon = supercone(&["canon"], unit);
    assert_eq!(canon.code, 2);
    assert!(canon.stderr.contains("not in the nilpotent cone"));
    assert_eq!(supercone(&["census", "--m", "x", "--n", "1"], "").code, 2);
    assert_eq!(supercone(&["--help"], "").code, 0);
}

#[test]
fn sample_then_canon_lands_in_census() {
    let census = supercone(&["census", "--m", "3", "--n", "2"], "");
    let entries: Vec<Value> = census.stdout.lines().map(json).filter(|v| v.get("r").is_some()).collect();
    assert!(!entries.is_empty());
    for seed in ["0", "1", "2", "17"] {
        let sample = supercone(&["sample", "--kind", "gl(3|2)", "--seed", seed], "");
        assert_eq!(sample.code, 0, "{}", sample.stderr);
        let canon = supercone(&["canon"], &sample.stdout);
        assert_eq!(canon.code, 0, "{}", canon.stderr);
        let params = &json(canon.stdout.trim())["params"];
        assert!(entries.contains(params), "params {params} not in census");
    }

    let params = r#"{"r":1,"partition":[1],"c_pivots":[1],"r_pivots":[],"s":0}"#;
    let sample = supercone(&["sample", "--kind", "gl(2|2)", "--params", params, "--seed", "5"], "");
    assert_eq!(sample.code, 0, "{}", sample.stderr);
    let canon = supercone(&["canon", "--trace"], &sample.stdout);
    let v = json(canon.stdout.trim());
    assert_eq!(v["params"], json(params));
    assert!(v["trace"].as_array().is_some_and(|t| !t.is_empty()));
}

#[test]
fn verify_complement_status() {
    let q = supercone(&["verify-complement", "--kind", "q(2)"], "");
    assert_eq!(q.code, 0);
    assert_eq!(json(q.stdout.trim())["passed"], true);
    let sl = supercone(&["verify-complement", "--kind", "sl(2|2)"], "");
    assert_eq!(sl.code, 1);
    assert_eq!(json(sl.stdout.trim())["passed"], false);
}

#[test]
fn verify_inclusion_passes() {
    let out = supercone(&["verify-inclusion", "--m", "2", "--n", "3", "--samples", "50", "--seed", "7"], "");
    assert_eq!(out.code, 0);
    let v = json(out.stdout.trim());
    assert_eq!(v["failures"], 0);
    assert_eq!(v["samples"], 50);
}
