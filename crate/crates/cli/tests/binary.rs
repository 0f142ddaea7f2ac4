use std::path::Path;
use std::process::Command;

use serde_json::Value;

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).display().to_string()
}

fn defcoh(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_defcoh")).args(args).output().expect("runs");
    let stdout = String::from_utf8(out.stdout).unwrap();
    let json = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap_or(-1), json, String::from_utf8(out.stderr).unwrap())
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn hochschild_of_dual_numbers() {
    let (code, v, _) = defcoh(&["hochschild", &fixture("dual_numbers.txt")]);
    assert_eq!(code, 0);
    let r = &v["results"][0];
    assert_eq!(r["dims"], serde_json::json!([2, 1, 1, 1]));
    assert_eq!(r["derivations"]["outer"], 1);
}

#[test]
fn representatives_are_exact_strings() {
    let (code, v, _) = defcoh(&["exal", &fixture("dual_numbers.txt"), "--emit-representatives"]);
    assert_eq!(code, 0);
    let reps = v["results"][0]["cohomology"]["representatives"].as_array().unwrap();
    assert_eq!(reps.len(), 1);
    assert!(reps[0].as_array().unwrap().iter().all(Value::is_string));
}

#[test]
fn nerve_of_the_vee() {
    let (code, v, _) = defcoh(&["nerve", &fixture("vee.txt")]);
    assert_eq!(code, 0);
    assert_eq!(v["results"][0]["betti"], serde_json::json!([0, 1]));
    assert_eq!(v["results"][1]["betti"], serde_json::json!([1, 0]));
}

#[test]
fn obstruction_reaches_outer_derivations() {
    let (code, v, _) = defcoh(&["obstruct", &fixture("outer_derivation.txt")]);
    assert_eq!(code, 0);
    assert_eq!(v["results"][0]["stage"], "outer_derivation");
    assert_eq!(v["results"][1]["stage"], "vanishing");
}

#[test]
fn deterministic_up_to_wall_time() {
    let dir = tempfile::tempdir().unwrap();
    let mut reports = Vec::new();
    for i in 0..2 {
        let path = dir.path().join(format!("r{i}.json")).display().to_string();
        let (code, _, _) = defcoh(&["all", &fixture("vee.txt"), "--report", &path]);
        assert_eq!(code, 0);
        let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert!(v["wall_time_ms"].is_u64());
        v.as_object_mut().unwrap().remove("wall_time_ms");
        reports.push(serde_json::to_string(&v).unwrap());
    }
    assert_eq!(reports[0], reports[1]);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _, _) = defcoh(&["frobnicate", &fixture("vee.txt")]);
    assert_eq!(code, 1);
    let (code, _, _) = defcoh(&["nerve", "/nonexistent/manifest"]);
    assert_eq!(code, 1);
    let (code, _, _) = defcoh(&["hochschild", &fixture("vee.txt")]);
    assert_eq!(code, 1);
    let bad = write(&dir, "syntax.txt", "field Q\nbuiltin k\n");
    let (code, _, err) = defcoh(&["hochschild", &bad]);
    assert_eq!(code, 2);
    assert!(err.contains("line 2"), "{err}");
    let nonassoc = write(&dir, "assoc.txt", "field Q\nalgebra L\n  basis 1 x y\n  unit 1 0 0\n  mul 1 1 = 1 0 0\n  mul 1 x = 0 1 0\n  mul x 1 = 0 1 0\n  mul 1 y = 0 0 1\n  mul y 1 = 0 0 1\n  mul x x = 0 0 1\n  mul x y = 0 1 0\nend\n");
    let (code, _, _) = defcoh(&["hochschild", &nonassoc]);
    assert_eq!(code, 3);
    let no_meet = write(
        &dir,
        "meet.txt",
        "field Q\nbuiltin k ground\nbimodule R regular k\nsite\n  objects U V\n  cover U V\nend\npresheaf A\n  at U k\n  at V k\nend\nbimodule_presheaf M over A\n  at U R\n  at V R\nend\ncommand cech M\n",
    );
    let (code, _, err) = defcoh(&["cech", &no_meet]);
    assert_eq!(code, 4, "{err}");
    let (code, _, _) = defcoh(&["hochschild", &fixture("dual_numbers.txt"), "--degree", "30"]);
    assert_eq!(code, 5);
}

#[test]
fn selftest_passes() {
    let (code, v, err) = defcoh(&["selftest", "--seed", "7"]);
    assert_eq!(code, 0, "{err}");
    let criteria = v["results"][0]["criteria"].as_array().unwrap();
    assert_eq!(criteria.len(), 10);
    assert!(criteria.iter().all(|c| c["passed"] == true));
}
