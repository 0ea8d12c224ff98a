use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn wkam(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wkam")).args(args).output().expect("run wkam")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn critical_on_two_points() {
    let t2 = data("t2.json");
    let out = wkam(&["critical", "--in", t2.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["alpha0"], "-1/2");
    assert_eq!(v["cycle"], serde_json::json!(["a", "b"]));
    assert_eq!(v["reduced"][0][1], "-1/2");
}

#[test]
fn constant_generator_gives_minus_k() {
    let out = wkam(&["critical", "--gen", "constant:4:7/3"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json_of(&out)["alpha0"], "-7/3");
    let out = wkam(&["barrier", "--gen", "constant:3:5"]);
    let v = json_of(&out);
    assert!(v["h"].as_array().unwrap().iter().flat_map(|r| r.as_array().unwrap()).all(|x| x == "0"));
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(code(&wkam(&["critical", "--in", "/nonexistent/t.json"])), 2);
    assert_eq!(code(&wkam(&["critical", "--gen", "constant:0:1"])), 2);
    assert_eq!(code(&wkam(&["critical", "--gen", "bogus:1"])), 2);
    assert_eq!(code(&wkam(&["critical"])), 2);
    assert_eq!(code(&wkam(&["critical", "--in", "x", "--gen", "constant:1:1"])), 2);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\"n\": 2, \"cost\": [[1]]}").unwrap();
    let out = wkam(&["critical", "--in", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}

#[test]
fn aubry_and_subsolution_on_three_points() {
    let t3 = data("t3.json");
    let v = json_of(&wkam(&["aubry", "--in", t3.to_str().unwrap()]));
    assert_eq!(v["aubry"], serde_json::json!(["a", "b"]));
    assert_eq!(v["aubry_edges"], serde_json::json!([["a", "b"], ["b", "a"]]));
    let out = wkam(&["subsolution", "--in", t3.to_str().unwrap(), "--check"]);
    assert_eq!(code(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["check"], true);
    let strict = v["strict_pairs"].as_array().unwrap();
    for p in [["a", "c"], ["b", "c"], ["c", "a"], ["c", "b"], ["c", "c"]] {
        assert!(strict.contains(&serde_json::json!(p)));
    }
    let out = wkam(&["subsolution", "--in", t3.to_str().unwrap(), "--check", "--u", "0,0,-3"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json_of(&out)["aubry_u"], serde_json::json!(["a", "b"]));
    let out = wkam(&["subsolution", "--in", t3.to_str().unwrap(), "--u", "0,5,0"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn potential_emits_jump_functions() {
    let t3 = data("t3.json");
    let v = json_of(&wkam(&["potential", "--in", t3.to_str().unwrap(), "--horizon", "3"]));
    assert_eq!(v["F"], serde_json::json!(["0", "0", "9"]));
    assert_eq!(v["f"], serde_json::json!(["0", "0", "-9"]));
    assert!(v["phi_3"].is_array());
    assert_eq!(v["phi"][0][0], "0");
}

#[test]
fn verify_exit_codes() {
    let t2 = data("t2.json");
    assert_eq!(code(&wkam(&["verify", "--in", t2.to_str().unwrap()])), 0);
    let bad = data("t3_bad_claims.json");
    let out = wkam(&["verify", "--in", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 3);
    let v = json_of(&out);
    let failed: Vec<&Value> = v["checks"].as_array().unwrap().iter().filter(|c| c["pass"] == false).collect();
    assert!(failed.iter().any(|c| c["name"] == "claims.h_triangle" && c["witness"].is_string()));
    let out = wkam(&["verify", "--gen", "constant:11:0"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("too large"));
}

#[test]
fn plotdata_for_circle_instances() {
    let out = wkam(&["plotdata", "--gen", "fk:16:1:cos"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "point,V,F,f,h_diag,aubry,h_0");
    let flagged: Vec<&str> = lines.filter(|l| l.split(',').nth(5) == Some("1")).collect();
    assert_eq!(flagged.len(), 1);
    assert!(flagged[0].starts_with("0,"));

    let out = wkam(&["plotdata", "--gen", "fk:6:1:zero"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().skip(1).filter(|l| l.split(',').nth(5) == Some("1")).count(), 6);

    let t2 = data("t2.json");
    assert_eq!(code(&wkam(&["plotdata", "--in", t2.to_str().unwrap()])), 2);
}

#[test]
fn csv_output_and_files_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let out = wkam(&["barrier", "--gen", "random:6:9:-2:3", "--format", "csv", "--out", p.to_str().unwrap()]);
        assert_eq!(code(&out), 0);
        assert!(out.stdout.is_empty());
    }
    let first = fs::read(&a).unwrap();
    assert_eq!(first, fs::read(&b).unwrap());
    let text = String::from_utf8(first).unwrap();
    assert!(text.starts_with("quantity,x,y,value\n"));
    assert!(text.lines().any(|l| l.starts_with("h,0,0,")));
}

#[test]
fn float_mode_override() {
    let t2 = data("t2.json");
    let out = wkam(&["critical", "--in", t2.to_str().unwrap(), "--mode", "float", "--tol", "1e-9"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json_of(&out)["alpha0"], -0.5);
    let out = wkam(&["verify", "--gen", "random:5:3:-1:2", "--mode", "float"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn help_exits_zero() {
    assert_eq!(code(&wkam(&["--help"])), 0);
    assert_eq!(code(&wkam(&["nonsense"])), 2);
}
