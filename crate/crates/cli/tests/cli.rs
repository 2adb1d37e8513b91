use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use growth_core::RatFun;
use serde_json::Value;

fn growth(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_growth"))
        .args(args)
        .env_remove("GROWTH_CACHE_DIR")
        .output()
        .expect("run growth")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures")
}

#[test]
fn fq_single_subset() {
    let o = growth(&["fq", "--type", "A2", "--Q", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "t^6/(1 - t^6)");
    let parsed: RatFun = stdout(&o).trim().parse().unwrap();
    assert_eq!(parsed, "t^6/(1-t^6)".parse().unwrap());
}

#[test]
fn fq_json_lists_points() {
    let v = json(&growth(&["fq", "--type", "A2", "--format", "json"]));
    let items = v["f_q"].as_array().unwrap();
    assert_eq!(items.len(), 4);
    let empty = items.iter().find(|i| i["Q"].as_array().unwrap().is_empty()).unwrap();
    assert_eq!(empty["points"], serde_json::json!([[0, 0], [1, 1], [2, 2]]));
}

#[test]
fn series_json_schema() {
    let o = growth(&["series", "--type", "A2", "--J", "", "--K", "", "--expand", "0", "--format", "json"]);
    assert!(o.status.success());
    let v = json(&o);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["type", "J", "K", "series", "expansion"]);
    assert_eq!(v["expansion"][0], "1");
    assert_eq!(v["type"], "A2");
    let f: RatFun = serde_json::from_value(v["series"].clone()).unwrap();
    assert_eq!(f, "(1+t+t^2)/(1-t)^2".parse().unwrap());
}

#[test]
fn series_entry_of_m_s() {
    // row Q = {1}, column J = {2} of M_S
    let o = growth(&["series", "--type", "A2", "--Q", "1", "--J", "2", "--K", "1,2", "--format", "json"]);
    let f: RatFun = serde_json::from_value(json(&o)["series"].clone()).unwrap();
    assert_eq!(f, "t^4*(1-t^2)/((1-t^2)*(1-t^6))".parse().unwrap());
}

#[test]
fn json_round_trips_through_text() {
    let o = growth(&["series", "--type", "B2", "--J", "1", "--K", "2", "--expand", "12", "--format", "json"]);
    let v = json(&o);
    let f: RatFun = serde_json::from_value(v["series"].clone()).unwrap();
    let text = growth(&["series", "--type", "B2", "--J", "1", "--K", "2"]);
    let g: RatFun = stdout(&text).trim().parse().unwrap();
    assert_eq!(f, g);
    let exp: Vec<String> = f.expand(12).unwrap().iter().map(|c| c.to_string()).collect();
    assert_eq!(v["expansion"], serde_json::json!(exp));
}

#[test]
fn output_is_deterministic() {
    let a = growth(&["matrix", "--type", "G2", "--format", "json"]);
    let b = growth(&["matrix", "--type", "G2", "--format", "json"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_and_check_exit_zero() {
    let o = growth(&["verify", "--type", "G2", "--max-length", "15"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let o = growth(&["check", "--type", "A2", "--degree", "10"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("0 failed"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["cartan", "Q7"][..],
        &["series", "--type", "A2", "--J", "3"],
        &["series", "--type", "A2", "--J", "x"],
        &["fq", "--type", "A2", "--Q", "0"],
        &["series", "--type", "A2", "--K", "1", "--Q", "2"],
        &["verify", "--type", "A2"],
        &["finite", "--type", "A2", "--what", "nonsense"],
        &["selftest", "--fixtures", "/nonexistent/dir"],
    ] {
        let o = growth(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn finite_outputs() {
    let o = growth(&["finite", "--type", "A2", "--what", "poincare"]);
    assert_eq!(stdout(&o).trim(), "1 + 2*t + 2*t^2 + t^3");
    let o = growth(&["finite", "--type", "B3", "--what", "check"]);
    assert!(o.status.success());
    let v = json(&growth(&["finite", "--type", "A2", "--what", "pmatrix", "--K", "1", "--format", "json"]));
    assert_eq!(v["rows"], serde_json::json!([[], [1]]));
    assert_eq!(v["entries"].as_array().unwrap().len(), 8);
}

#[test]
fn cartan_json() {
    let v = json(&growth(&["cartan", "g_2", "--format", "json"]));
    assert_eq!(v["cone_generators"], serde_json::json!([[2, 1], [3, 2]]));
    assert_eq!(v["positive_roots"], 6);
}

#[test]
fn oracle_bins() {
    let v = json(&growth(&["oracle", "--type", "A1", "--max-length", "6"]));
    assert_eq!(v["total"], serde_json::json!([1, 2, 2, 2, 2, 2, 2]));
}

#[test]
fn selftest_passes() {
    let o = growth(&["selftest", "--format", "json"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let v = json(&o);
    assert_eq!(v["passed"], true);
    assert_eq!(v["fixtures"].as_array().unwrap().len(), 8);
}

#[test]
fn corrupted_fixture_is_named() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["a2.json", "g2.json"] {
        std::fs::copy(fixture_dir().join(name), dir.path().join(name)).unwrap();
    }
    let path = dir.path().join("g2.json");
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::write(&path, text.replacen("[[2, 1], [3, 2]]", "[[2, 1], [3, 3]]", 1)).unwrap();
    let o = growth(&["selftest", "--fixtures", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("ok   fixture a2"), "{out}");
    assert!(out.contains("FAIL fixture g2"), "{out}");
    assert!(out.contains("cone generators"), "{out}");
}

#[test]
fn cache_directory_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_growth"))
            .args(["matrix", "--type", "B2", "--format", "json"])
            .env("GROWTH_CACHE_DIR", dir.path())
            .output()
            .unwrap()
    };
    let first = run();
    let cached = dir.path().join("B2.m_s.json");
    assert!(cached.exists());
    let second = run();
    assert_eq!(first.stdout, second.stdout);
    std::fs::write(&cached, "garbage").unwrap();
    let third = run();
    assert_eq!(first.stdout, third.stdout);
    assert_eq!(first.stdout, growth(&["matrix", "--type", "B2", "--format", "json"]).stdout);
}
