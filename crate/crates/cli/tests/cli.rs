use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use weylspin_cli::{Report, Status};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_weylspin"))
}

fn structure(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("structures")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> (i32, Output) {
    let out = bin().args(args).output().expect("binary runs");
    (out.status.code().expect("exit code"), out)
}

fn report(out: &Output) -> Report {
    Report::from_json(&String::from_utf8_lossy(&out.stdout)).expect("stdout is a report")
}

fn values<'a>(r: &'a Report, name: &str) -> &'a Value {
    &r.record(name).unwrap_or_else(|| panic!("record {}", name)).values
}

#[test]
fn einstein_weyl_instance_passes() {
    let (code, out) = run(&["check", "--structure", &structure("ew_flat_n2.json")]);
    assert_eq!(code, 0, "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    assert_eq!(r.summary.fail, 0);
    assert_eq!(values(&r, "spinors")["dimension"], 2);
    assert_eq!(values(&r, "einstein_weyl")["lambda"], "0");
    assert_eq!(values(&r, "compatibility")["epsilon"], -2);
    assert_eq!(r.record("theorem71").unwrap().status, Status::Pass);
}

#[test]
fn negative_control_fails_projection() {
    let (code, out) = run(&["check", "--structure", &structure("negative_control.json")]);
    assert_eq!(code, 1);
    let r = report(&out);
    assert_eq!(r.record("projection").unwrap().status, Status::Fail);
    assert_eq!(values(&r, "spinors")["dimension"], 0);
}

#[test]
fn malformed_expression_is_input_error() {
    let (code, out) = run(&["check", "--structure", &structure("malformed.json")]);
    assert_eq!(code, 2);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("H: parse error at position 9"), "{}", err);
    assert!(out.stdout.is_empty());
}

#[test]
fn report_schema_round_trips() {
    let (_, out) = run(&["check", "--structure", &structure("product_n3.json")]);
    let text = String::from_utf8_lossy(&out.stdout).to_string();
    let r = Report::from_json(&text).unwrap();
    assert_eq!(r.to_json(), text.trim_end());
    let names: Vec<&str> = r.records.iter().map(|x| x.name.as_str()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    assert!(r.records.iter().all(|x| !x.anchor.is_empty()));
    let raw: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(raw["conventions"]["k_sign_epsilon"], -2);
    for key in ["hermitian_form", "odd_n_component", "parity_rule"] {
        assert!(raw["conventions"][key].is_string(), "{}", key);
    }
}

#[test]
fn suite_selection_and_basepoint() {
    let path = structure("product_n3.json");
    let (code, out) = run(&["check", "--structure", &path, "--suite", "projection,spinors"]);
    assert_eq!(code, 0);
    let r = report(&out);
    let names: Vec<&str> = r.records.iter().map(|x| x.name.as_str()).collect();
    assert_eq!(names, ["projection", "spinors"]);

    let (code, _) = run(&[
        "check",
        "--structure",
        &path,
        "--suite",
        "holonomy",
        "--basepoint",
        "0,1,1",
    ]);
    assert_eq!(code, 2);
    let (code, out) = run(&[
        "check",
        "--structure",
        &path,
        "--suite",
        "holonomy",
        "--basepoint",
        "0,1,-2,0,1/2",
        "--max-order",
        "3",
    ]);
    assert_eq!(code, 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(values(&report(&out), "holonomy")["max_order"], 3);

    let (code, _) = run(&["check", "--structure", &path, "--suite", "bogus"]);
    assert_eq!(code, 2);
    let (code, _) = run(&["check", "--structure", "/nonexistent/structure.json"]);
    assert_eq!(code, 2);
}

#[test]
fn pole_at_basepoint_is_input_error() {
    let dir = std::env::temp_dir().join(format!("weylspin-pole-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("pole.json");
    std::fs::write(&file, r#"{"n": 1, "H": "1/x1", "omega": {"f": "0"}, "w": 0}"#).unwrap();
    let (code, out) = run(&[
        "check",
        "--structure",
        file.to_str().unwrap(),
        "--basepoint",
        "0,0,0",
        "--suite",
        "holonomy",
    ]);
    assert_eq!(code, 2, "{}", String::from_utf8_lossy(&out.stdout));
    assert!(String::from_utf8_lossy(&out.stderr).contains("basepoint"));
}

#[test]
fn catalog_filter() {
    let (code, out) = run(&["catalog", "g^{w,h}"]);
    assert_eq!(code, 0);
    let r = report(&out);
    let mut hs: Vec<String> = r.records.iter().map(|x| x.name.clone()).collect();
    hs.sort();
    assert_eq!(
        hs,
        [
            "g^{0,trivial(2)}",
            "g^{1,trivial(3)}",
            "g^{2,su(2)}",
            "g^{2,trivial(4)}",
            "g^{4,su(3)}"
        ]
    );
    assert!(r
        .records
        .iter()
        .all(|x| x.values["spinor_dim_computed"] == x.values["spinor_dim_formula"]));

    let (code, out) = run(&["catalog", "g^k"]);
    assert_eq!(code, 0);
    let r = report(&out);
    assert!(r
        .records
        .iter()
        .all(|x| x.status == Status::Flagged && x.values["parity_flag"] == true));

    let (code, out) = run(&["catalog"]);
    assert_eq!(code, 0);
    assert!(report(&out).records.len() > 15);

    let (code, _) = run(&["catalog", "nonexistent"]);
    assert_eq!(code, 2);
}

#[test]
fn selftest_is_reproducible_and_reducible() {
    let (code, a) = run(&["selftest", "--seed", "3", "--max-signature", "6"]);
    assert_eq!(code, 0);
    let (_, b) = run(&["selftest", "--seed", "3", "--max-signature", "6"]);
    assert_eq!(a.stdout, b.stdout);
    let small = report(&a);
    assert_eq!(values(&small, "lambda_homomorphism")["checked"], 500);

    let dir = std::env::temp_dir().join(format!("weylspin-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("selftest.json");
    let (code, out) = run(&["selftest", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.stdout.is_empty());
    let full = Report::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(values(&full, "lambda_homomorphism")["checked"], 700);
    assert_eq!(full.record("compatibility_audit").unwrap().status, Status::Pass);
}
