use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn satake(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_satake"))
        .args(args)
        .env_remove("SATAKE_GROUP")
        .env_remove("SATAKE_BOUND")
        .env_remove("SATAKE_JSON")
        .env_remove("SATAKE_SIGNED_TRACE")
        .env_remove("SATAKE_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn schema(kind: &str) -> Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../schemas").join(format!("{kind}.schema.json"));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn assert_valid(kind: &str, args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.push("--json");
    let out = satake(&full);
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let schema = schema(kind);
    let compiled = jsonschema::JSONSchema::compile(&schema).unwrap();
    if let Err(errors) = compiled.validate(&doc) {
        let msgs: Vec<String> = errors.map(|e| format!("{e} at {}", e.instance_path)).collect();
        panic!("{kind} output does not match its schema: {msgs:?}");
    }
    doc
}

#[test]
fn describe_pgl2_reports_gl2() {
    let out = satake(&["describe"]);
    assert!(out.status.success());
    assert!(stdout(&out).lines().any(|l| l.starts_with("Ĝ₁") && l.ends_with("GL₂")));
    let doc = assert_valid("describe", &["describe"]);
    assert_eq!(doc["dual"]["name"], "SL(2)");
}

#[test]
fn describe_sl2_is_direct_product() {
    let out = satake(&["describe", "--group", "SL(2)"]);
    assert!(stdout(&out).contains("direct product"));
    let doc = assert_valid("describe", &["describe", "--group", "SL(2)"]);
    assert_eq!(doc["direct_product"], true);
}

#[test]
fn describe_torus_has_no_roots() {
    let out = satake(&["describe", "--group", "torus(1)"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("positive roots   0"));
}

#[test]
fn quadratic_relation_on_the_command_line() {
    let out = satake(&["hecke-mul", "s*s"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "s*s = q·T[e] + (-1 + q)·T[s1]\n");
    let out = satake(&["hecke-mul", "e*s0s1", "--group", "SL(3)"]);
    assert_eq!(stdout(&out), "e*s0s1 = T[s0s1]\n");
    assert_valid("hecke-mul", &["hecke-mul", "s0*s1*s0", "--assoc-trials", "5"]);
}

#[test]
fn associativity_trials() {
    let out = satake(&["hecke-mul", "e", "--group", "SL(3)", "--assoc-trials", "20", "--seed", "7"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("associativity: 20/20"));
}

#[test]
fn gl2_ic_convolution_table() {
    let args = ["ic-convolve", "--group", "GL(2)", "--mu", "1,0", "--lam", "1,0"];
    let out = satake(&args);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("= IC[1,1](-1) + IC[2,0](0)"), "{text}");
    let doc = assert_valid("ic-convolve", &args);
    assert_eq!(doc["rows"].as_array().unwrap().len(), 2);
    assert_eq!(doc["weights_additive"], true);
    // Unit row.
    let out = satake(&["ic-convolve", "--group", "GL(2)", "--mu", "0,0", "--n", "-2", "--lam", "1,0", "--m", "3"]);
    assert!(stdout(&out).contains("= IC[1,0](1)"));
}

#[test]
fn satake_table_rows() {
    let out = satake(&["satake-table", "--bound", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("IC[2](0)   c[0] + c[2]         q·V[2]<0>"), "{text}");
    assert!(text.contains("IC[0](-1)  q·c[0]"), "{text}");
    let doc = assert_valid("satake-table", &["satake-table", "--bound", "3", "--group", "SL(3)", "--signed-trace"]);
    assert_eq!(doc["diagonal_units"], true);
    assert_eq!(doc["sign_convention"], "signed");
}

#[test]
fn verify_passes_and_negative_control_fails() {
    let out = satake(&["verify", "--bound", "4", "--triples", "20"]);
    assert!(out.status.success(), "{}", stdout(&out));
    let doc = assert_valid("verify", &["verify", "--bound", "2", "--triples", "5"]);
    assert_eq!(doc["passed"], true);
    let out = satake(&["verify", "--bound", "4", "--triples", "5", "--corrupt-q-analog"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("[FAIL]  3."));
}

#[test]
fn verify_bound_zero_is_vacuous() {
    let out = satake(&["verify", "--bound", "0", "--triples", "3", "--group", "SL(3)"]);
    assert!(out.status.success(), "{}", stdout(&out));
}

#[test]
fn environment_overrides_flags() {
    let out = Command::new(env!("CARGO_BIN_EXE_satake"))
        .arg("describe")
        .env("SATAKE_GROUP", "SL(3)")
        .env("SATAKE_JSON", "true")
        .output()
        .unwrap();
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["group"], "SL(3)");
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "--bound", "3", "--triples", "10", "--seed", "42", "--json"];
    assert_eq!(satake(&args).stdout, satake(&args).stdout);
}

#[test]
fn errors_exit_with_one() {
    let out = satake(&["describe", "--group", "E(8)"]);
    assert_eq!(out.status.code(), Some(1));
    let out = satake(&["ic-convolve", "--mu", "-1", "--lam", "0"]);
    assert_eq!(out.status.code(), Some(1));
}
