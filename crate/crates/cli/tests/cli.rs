use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hopfcat"))
}

fn doc(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn run(args: &[&str], file: &tempfile::NamedTempFile) -> Output {
    let mut c = bin();
    c.arg(args[0]).arg(file.path()).args(&args[1..]);
    c.output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

const C2FIX: &str = r#"{
  "field": "Q",
  "hopf": {"fixture": "F1"},
  "category": {"fixture": "C2fix"},
  "modules": {"T": {"fixture": "T"}, "R": {"fixture": "R"}, "signT": {"fixture": "signT"}},
  "tasks": [
    {"check": {}},
    {"ss": {"theorem": "T3_15", "source": "T", "target": "T", "degree": 3}}
  ]
}"#;

const GROUP: &str = r#"{
  "field": "F2",
  "hopf": {"fixture": "F2"},
  "category": {"fixture": "C1"},
  "modules": {"k": {"representable": "*"}},
  "tasks": [{"ext": {"source": "k", "target": "k", "context": "Mod-C#H", "degree": 3}}]
}"#;

#[test]
fn check_passes_on_fixtures() {
    let f = doc(C2FIX);
    let out = run(&["check"], &f);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("module signT") && text.contains("overall: pass"), "{text}");
}

#[test]
fn run_reports_convergence() {
    let f = doc(C2FIX);
    let out = run(&["run", "--format", "json"], &f);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let ss = &v["tasks"][1]["result"];
    assert_eq!(ss["theorem"], "T3_15");
    assert_eq!(ss["verdict"], true);
    let cells = ss["e2"].as_array().unwrap();
    assert_eq!(cells.len(), 16);
    for c in cells {
        if c["p"].as_u64().unwrap() >= 1 {
            assert_eq!(c["dim"], 0);
        }
    }
    assert_eq!(ss["abutment"], serde_json::json!([1, 0, 1, 0]));
}

#[test]
fn output_is_deterministic() {
    let f = doc(C2FIX);
    for fmt in ["text", "json"] {
        let a = run(&["run", "--format", fmt], &f);
        let b = run(&["run", "--format", fmt], &f);
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn group_cohomology_ext() {
    let f = doc(GROUP);
    let out = run(&["run", "--format", "json"], &f);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["tasks"][0]["result"]["dims"], serde_json::json!([1, 1, 1, 1]));
    let sub = run(&["ext", "--source", "k", "--target", "k", "--context", "Mod-C", "--degree", "2", "--format", "json"], &f);
    assert_eq!(json(&sub)["tasks"][0]["result"]["dims"], serde_json::json!([1, 0, 0]));
}

#[test]
fn subcommands() {
    let f = doc(C2FIX);
    let out = run(&["hom", "--source", "T", "--target", "R", "--equivariant", "--format", "json"], &f);
    assert_eq!(out.status.code(), Some(0));
    let r = &json(&out)["tasks"][0]["result"];
    assert_eq!(r["hom"]["dim"], 1);
    assert_eq!(r["invariant_dim"], 0);
    let out = run(&["ss", "--theorem", "T4_19", "--source", "T", "--target", "R", "--degree", "2"], &f);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let out = run(&["ss", "--theorem", "T5_17", "--source", "T", "--target", "R", "--degree", "2"], &f);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["ss", "--theorem", "T9_99", "--source", "T", "--target", "T", "--degree", "2"], &f);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn relative_document() {
    let f = doc(r#"{
      "field": "Q", "hopf": {"fixture": "F1"}, "category": {"fixture": "D1"},
      "modules": {"M1": {"fixture": "M1"}, "M1g": {"fixture": "M1_shifted"}},
      "tasks": [
        {"hom": {"source": "M1", "target": "M1g", "mode": "colinear"}},
        {"ss": {"theorem": "T5_17", "source": "M1", "target": "M1", "degree": 3}}
      ]}"#);
    let out = run(&["run", "--format", "json"], &f);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["tasks"][0]["result"]["hom"]["dim"], 0);
    assert_eq!(v["tasks"][1]["result"]["verdict"], true);
}

#[test]
fn parse_error_reports_position() {
    let f = doc("{\n  \"field\": \"Q\",\n  \"hopf\": \n}");
    let out = run(&["check"], &f);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 4"), "{err}");
}

#[test]
fn invalid_module_aborts_dependent_tasks_only() {
    let f = doc(r#"{
      "field": "Q", "hopf": {"fixture": "F1"}, "category": {"fixture": "C2fix"},
      "modules": {
        "T": {"fixture": "T"},
        "bad": {"explicit": {"dims": {"*": 1}, "maps": {"1": [[1]], "x": [[1]]}}}
      },
      "tasks": [
        {"ext": {"source": "T", "target": "T", "context": "Mod-C", "degree": 1}},
        {"ext": {"source": "bad", "target": "T", "context": "Mod-C", "degree": 1}}
      ]}"#);
    let out = run(&["run", "--format", "json"], &f);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["tasks"][0]["status"], "pass");
    assert_eq!(v["tasks"][1]["status"], "invalid");
}

#[test]
fn structure_constants_document() {
    // Q[C2] written out by hand, and the same with a broken counit
    let good = r#"{
      "field": "Q",
      "hopf": {"structure": {
        "labels": ["e", "g"],
        "mult": [[["1", "0"], ["0", "1"]], [["0", "1"], ["1", "0"]]],
        "unit": [1, 0],
        "comult": [[[1, 0], [0, 0]], [[0, 0], [0, 1]]],
        "counit": [1, 1],
        "antipode": [[1, 0], [0, 1]]}},
      "category": {"fixture": "C2fix"},
      "modules": {"T": {"fixture": "T"}},
      "tasks": [{"check": {}}, {"ext": {"source": "T", "target": "T", "context": "Mod-C#H", "degree": 2}}]
    }"#;
    let out = run(&["run", "--format", "json"], &doc(good));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["tasks"][1]["result"]["dims"], serde_json::json!([1, 0, 1]));
    let broken = good.replace("\"counit\": [1, 1]", "\"counit\": [\"1/2\", 1]").replace("C2fix", "C1");
    let out = run(&["check", "--format", "json"], &doc(&broken));
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["tasks"][0]["result"]["items"][0]["ok"], false);
}

#[test]
fn prime_field_entries_as_integers() {
    let f = doc(r#"{
      "field": "F3",
      "hopf": {"group": {"labels": ["e", "g", "h"], "table": [[0, 1, 2], [1, 2, 0], [2, 0, 1]]}},
      "category": {"fixture": "C1"},
      "modules": {"k": {"explicit": {"dims": {"*": 1}, "maps": {"id": [[1]]}}}},
      "tasks": [{"ext": {"source": "k", "target": "k", "context": "Mod-C#H", "degree": 3}}]
    }"#);
    let out = run(&["run", "--format", "json"], &f);
    assert_eq!(out.status.code(), Some(0));
    // H^q(C3, F3) is one-dimensional in every degree
    assert_eq!(json(&out)["tasks"][0]["result"]["dims"], serde_json::json!([1, 1, 1, 1]));
}
