//! End-to-end tests of the binary: golden outputs, determinism, exit codes.

use std::io::Write;
use std::process::{Command, Output};

use tempfile::NamedTempFile;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_wittkit"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

const PSI4: &str = r#"{"alternating":true,"ring":{"kind":"int"},"rows":[["0","1","0","0"],["-1","0","0","0"],["0","0","0","1"],["0","0","-1","0"]]}"#;
const BASEPOINT: &str = r#"{"ring":{"kind":"int"},"a":["0","0","1"],"b":["0","0","1"]}"#;

#[test]
fn pf_of_psi4_is_one() {
    let out = run(&["pf", "--matrix", PSI4]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    assert_eq!(stdout(&out), "{\"pf\":\"1\"}\n");
}

#[test]
fn vsymbol_basepoint_is_psi4_byte_exact() {
    let out = run(&["vsymbol", "--row", BASEPOINT, "--orientation", "+1"]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    assert_eq!(stdout(&out), format!("{}\n", PSI4));
}

#[test]
fn det_reads_files_and_inline_json() {
    let mut f = NamedTempFile::new().unwrap();
    write!(f, r#"{{"ring":{{"kind":"int"}},"rows":[["1","2"],["3","4"]]}}"#).unwrap();
    let path = f.path().to_str().unwrap().to_string();
    let from_file = run(&["det", "--matrix", &path]);
    assert!(from_file.status.success());
    assert_eq!(stdout(&from_file), "{\"det\":\"-2\"}\n");
    let inline = run(&["det", "--matrix", r#"{"ring":{"kind":"int"},"rows":[["1","2"],["3","4"]]}"#]);
    assert_eq!(stdout(&inline), "{\"det\":\"-2\"}\n");
}

#[test]
fn census_golden_and_deterministic() {
    let args = [
        "census",
        "--ring",
        r#"{"kind":"mod","m":2}"#,
        "--object",
        "umrows",
        "--n",
        "3",
        "--gens",
        "E",
    ];
    let a = run(&args);
    assert!(a.status.success(), "stderr: {}", stderr(&a));
    let b = run(&args);
    assert_eq!(stdout(&a), stdout(&b), "byte-identical across runs");
    let doc: serde_json::Value = serde_json::from_str(stdout(&a).trim()).unwrap();
    assert_eq!(doc["object_count"], 7);
    assert_eq!(doc["orbits"][0]["size"], 7);
    assert_eq!(doc["generator_set"], "E");
}

#[test]
fn domain_errors_exit_1_with_code() {
    // NotUnimodular: bad certificate
    let bad_row = r#"{"ring":{"kind":"int"},"a":["2","0"],"b":["1","0"]}"#;
    let out = run(&["vsymbol", "--row", bad_row]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("\"code\":\"NotUnimodular\""));
    assert!(stdout(&out).is_empty(), "no partial output on failure");

    // NotInvertible
    let two = r#"{"ring":{"kind":"int"},"rows":[["2"]]}"#;
    let out = run(&["det", "--matrix", two]);
    assert!(out.status.success());
    let inv = run(&["witt-neg", "--matrix", r#"{"alternating":true,"ring":{"kind":"int"},"rows":[["0","2"],["-2","0"]]}"#]);
    assert_eq!(inv.status.code(), Some(1));
    assert!(stderr(&inv).contains("\"code\":\"NotInvertible\""));
}

#[test]
fn parse_errors_exit_2() {
    let out = run(&["pf", "--matrix", "{not json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("\"code\":\"Parse\""));
    let missing = run(&["pf", "--matrix", "/no/such/file.json"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn verify_witness_round_trip() {
    let psi2 = r#"{"alternating":true,"ring":{"kind":"int"},"rows":[["0","1"],["-1","0"]]}"#;
    let empty_word = r#"{"s":0,"factors":[]}"#;
    let out = run(&["verify-witness", "--left", psi2, "--right", psi2, "--witness", empty_word]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    assert_eq!(stdout(&out), "{\"ok\":true}\n");

    // an explicit factor under the E flag is a BadWitness domain error
    let word = r#"{"s":0,"factors":[{"sl":{"ring":{"kind":"int"},"rows":[["1","0","0","0"],["0","1","0","0"],["0","0","1","0"],["0","0","0","1"]]}}]}"#;
    let out = run(&["verify-witness", "--left", psi2, "--right", psi2, "--witness", word, "--group", "E"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("\"code\":\"BadWitness\""));
    // and verifies under SL
    let out = run(&["verify-witness", "--left", psi2, "--right", psi2, "--witness", word, "--group", "SL"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "{\"ok\":true}\n");
}

#[test]
fn witt_add_and_neg_documents() {
    let psi2 = r#"{"alternating":true,"ring":{"kind":"int"},"rows":[["0","1"],["-1","0"]]}"#;
    let out = run(&["witt-add", "--left", psi2, "--right", psi2]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(doc["pf"], "1");
    assert_eq!(doc["rep"]["rows"].as_array().unwrap().len(), 4);

    let z5_rep = r#"{"alternating":true,"ring":{"kind":"mod","m":5},"rows":[["0","2"],["3","0"]]}"#;
    let out = run(&["witt-neg", "--matrix", z5_rep]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(doc["pf"], "3");
}

#[test]
fn suslin_raw_symbolic() {
    let row = r#"{"ring":{"kind":"poly","base":{"kind":"int"},"vars":["a1","a2","b1","b2"],"order":"grlex"},"a":["a1","a2"],"b":["b1","b2"]}"#;
    let strict = run(&["suslin", "--row", row]);
    assert_eq!(strict.status.code(), Some(1), "certificate must fail");
    let raw = run(&["suslin", "--row", row, "--raw"]);
    assert!(raw.status.success(), "stderr: {}", stderr(&raw));
    let doc: serde_json::Value = serde_json::from_str(stdout(&raw).trim()).unwrap();
    assert_eq!(doc["rows"][0][0], "a1");
    assert_eq!(doc["rows"][1][0], "-b2");
}

#[test]
fn table_format_renders_matrices() {
    let out = run(&["vsymbol", "--row", BASEPOINT, "--format", "table"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("[") && text.contains("]"), "table braces: {}", text);
    assert!(!text.contains("{"), "no JSON in table mode");
}

#[test]
fn compare_gens_report() {
    let out = run(&[
        "compare-gens",
        "--ring",
        r#"{"kind":"mod","m":2}"#,
        "--object",
        "umrows",
        "--n",
        "4",
        "--gens-a",
        "E",
        "--gens-b",
        "Sp",
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let doc: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(doc["coincide"], true, "E and Sp-transvection orbits coincide on Um4(F2)");
}

#[test]
fn eta_output_round_trips() {
    let out = run(&["eta", "--matrix", PSI4]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let doc: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(doc["zero"], true);
    // both components load back as valid alternating matrices
    for key in ["plus", "minus"] {
        let text = doc[key].to_string();
        let reload = run(&["pf", "--matrix", &text]);
        assert!(reload.status.success());
        assert_eq!(stdout(&reload), "{\"pf\":\"1\"}\n");
    }
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pf.json");
    let out = run(&["pf", "--matrix", PSI4, "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "{\"pf\":\"1\"}\n");
}
