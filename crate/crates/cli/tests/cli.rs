use std::path::PathBuf;
use std::process::Command;

use dgdm::dcomplex::{ChainMap, FreeDComplex};
use dgdm::doc::Document;
use dgdm::model::GeneratingMap;
use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_dgdm"));
    c.env_remove("WEYL_BOUND");
    c
}

fn write(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dgdm-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn run(cmd: &mut Command) -> (i32, Value) {
    let out = cmd.output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let v = if stdout.trim().is_empty() {
        Value::Null
    } else {
        serde_json::from_str(&stdout).unwrap()
    };
    (out.status.code().unwrap(), v)
}

const DEL: &str = r#"{"format":"dgdm-doc","version":1,"kind":"complex","body":{"nvars":1,"ranks":[1,1],"differentials":[[["d1"]]]}}"#;

const ALGEBRA: &str = r#"{"format":"dgdm-doc","version":1,"kind":"algebra","body":{"nvars":1,"generators":[
  {"name":"e","degree":1,"differential":[]},
  {"name":"f","degree":2,"differential":[]}]}}"#;

const MODULE: &str = r#"{"format":"dgdm-doc","version":1,"kind":"amodule","body":{
  "algebra":{"nvars":1,"generators":[{"name":"e","degree":1,"differential":[]}]},
  "cells":[{"name":"v","degree":1,"differential":[]},
           {"name":"w","degree":2,"differential":[{"cell":0,"d":[0],"coefficient":[{"coefficient":"x1","word":[]}]}]}]}}"#;

#[test]
fn homology_of_multiplication_by_d() {
    let f = write("del.doc", DEL);
    let (code, v) = run(bin().args(["homology", "--degree", "0", "--file"]).arg(&f));
    assert_eq!(code, 0);
    let h = &v["homology"][0];
    assert_eq!(h["generators"], serde_json::json!(["[1]"]));
    assert_eq!(h["relations"], serde_json::json!(["[d1]"]));
}

#[test]
fn boxprod_reports_d_tensor_d() {
    let (code, v) = run(bin().args(["boxprod", "--m", "1", "--n", "1"]));
    assert_eq!(code, 0);
    assert_eq!(v["summary"], "degree 2, D⊗_O D");
    let (code, v) = run(bin().args(["boxprod", "--m", "2", "--n", "1", "--zeta", "--truncation", "3"]));
    assert_eq!(code, 0);
    assert_eq!(v["status"], "pass");
}

#[test]
fn suite_seed_42() {
    let (code, v) = run(bin().args(["suite", "--seed", "42"]));
    assert_eq!(code, 0);
    assert_eq!(v["count"], 18);
    assert_eq!(v["reports"].as_array().unwrap().len(), 18);
}

#[test]
fn suite_config_document() {
    let f = write(
        "suite.doc",
        r#"{"format":"dgdm-doc","version":1,"kind":"suite-config","body":{"seed":3,"filter":"hac","instances":2,"truncation":3}}"#,
    );
    let (code, v) = run(bin().args(["suite", "--file"]).arg(&f));
    assert_eq!(code, 0);
    assert_eq!(v["count"], 3);
}

#[test]
fn single_checks() {
    let (code, v) = run(bin().args(["check", "--check", "flatness_counterexample"]));
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "pass");
    let (code, _) = run(bin().args(["check", "--check", "no_such_check"]));
    assert_eq!(code, 2);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(bin().arg("frobnicate")).0, 2);
    assert_eq!(run(bin().args(["boxprod", "--m", "1"])).0, 2);
    let bad = write("bad.doc", "{\"format\":\"dgdm-doc\"");
    assert_eq!(run(bin().args(["homology", "--file"]).arg(&bad)).0, 2);
    let f = write("del2.doc", DEL);
    assert_eq!(run(bin().args(["attach", "--degree", "1", "--boundary", "x1 + + d1", "--file"]).arg(&f)).0, 2);
    assert_eq!(run(bin().args(["homology", "--file", "/nonexistent/doc"])).0, 2);
}

#[test]
fn degree_guard_exits_3() {
    let f = write(
        "guard.doc",
        r#"{"format":"dgdm-doc","version":1,"kind":"complex","body":{"nvars":1,"ranks":[1,2],"differentials":[[["x1^3*d1"],["d1^3 + x1"]]]}}"#,
    );
    let (code, v) = run(bin().args(["homology", "--bound", "3", "--file"]).arg(&f));
    assert_eq!(code, 3);
    assert_eq!(v["status"], "aborted");
    assert_eq!(run(bin().env("WEYL_BOUND", "3").args(["homology", "--file"]).arg(&f)).0, 3);
    assert_eq!(run(bin().env("WEYL_BOUND", "40").args(["homology", "--bound", "3", "--file"]).arg(&f)).0, 0);
}

#[test]
fn d_squared_violation_names_degree() {
    let f = write(
        "dd.doc",
        r#"{"format":"dgdm-doc","version":1,"kind":"complex","body":{"nvars":1,"ranks":[1,1,1],"differentials":[[["1"]],[["d1"]]]}}"#,
    );
    let out = bin().args(["homology", "--file"]).arg(&f).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("degree 2"));
}

#[test]
fn weq_and_cone() {
    let iota = GeneratingMap::Iota(1).chain_map(1);
    let f = write("iota.doc", &Document::chain_map(&iota).to_text());
    let (code, v) = run(bin().args(["weq", "--file"]).arg(&f));
    assert_eq!(code, 1);
    assert_eq!(v["weak_equivalence"], false);
    let (code, v) = run(bin().args(["cone", "--file"]).arg(&f));
    assert_eq!(code, 0);
    let cone = serde_json::to_string(&v).unwrap();
    let c = Document::parse(&cone).unwrap().to_complex().unwrap();
    assert_eq!(c.ranks(), &[1, 2]);

    let id = ChainMap::identity(&FreeDComplex::disk(1, 2).unwrap());
    let f = write("id.doc", &Document::chain_map(&id).to_text());
    assert_eq!(run(bin().args(["weq", "--file"]).arg(&f)).0, 0);
}

#[test]
fn pushout_and_attach() {
    let s0 = FreeDComplex::sphere(1, 0);
    let f = write("f.doc", &Document::chain_map(&ChainMap::identity(&s0)).to_text());
    let g = write("g.doc", &Document::chain_map(&GeneratingMap::Iota(1).chain_map(1)).to_text());
    let (code, v) = run(bin().args(["pushout", "--file"]).arg(&f).arg("--file").arg(&g));
    assert_eq!(code, 0);
    assert_eq!(v["object"]["body"]["ranks"], serde_json::json!([1, 1]));

    let s = write("s0.doc", &Document::complex(&s0).to_text());
    let (code, v) = run(bin().args(["attach", "--degree", "1", "--boundary", "d1", "--file"]).arg(&s));
    assert_eq!(code, 0);
    let text = serde_json::to_string(&v).unwrap();
    let incl = Document::parse(&text).unwrap().to_chain_map().unwrap();
    assert_eq!(incl.target().differential(1).entry(0, 0).to_string(), "d1");
}

#[test]
fn sullivan_documents() {
    let a = write("alg.doc", ALGEBRA);
    let (code, v) = run(bin().args(["sullivan-extend", "--file"]).arg(&a));
    assert_eq!(code, 0);
    assert_eq!(v["generators"].as_array().unwrap().len(), 2);

    let bad = write("badalg.doc", &ALGEBRA.replace(r#""degree":2,"differential":[]"#, r#""degree":3,"differential":[{"coefficient":"1","word":[{"generator":0,"d":[0]}]}]"#));
    assert_eq!(run(bin().args(["sullivan-extend", "--file"]).arg(&bad)).0, 1);

    let m = write("mod.doc", MODULE);
    let (code, v) = run(bin().args(["sullivan-extend", "--file"]).arg(&m));
    assert_eq!(code, 0);
    assert_eq!(v["cells"][1]["differential"], "[(x1)] ⊗ v");

    let (code, v) = run(bin().args(["tensor-a", "--truncation", "3", "--file"]).arg(&m).arg("--file").arg(&m));
    assert_eq!(code, 0);
    assert_eq!(v["cells"].as_array().unwrap().len(), 4);
    assert_eq!(v["d_squared_zero"], true);

    let (code, v) = run(bin().args(["base-change", "--truncation", "3", "--file"]).arg(&a).arg("--file").arg(&m));
    assert_eq!(code, 0);
    assert_eq!(v["document"]["body"]["algebra"]["generators"].as_array().unwrap().len(), 2);
}
