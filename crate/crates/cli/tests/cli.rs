//! End-to-end runs of the `agbound` binary.

use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_agbound"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> Option<i32> {
    run(args).status.code()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

/// Checks the subset of JSON Schema the embedded schemas use.
fn validate(schema: &Value, v: &Value, path: &str) -> Result<(), String> {
    let fail = |what: &str| Err(format!("{path}: {what}"));
    if let Some(t) = schema.get("type").and_then(Value::as_str) {
        let ok = match t {
            "object" => v.is_object(),
            "array" => v.is_array(),
            "string" => v.is_string(),
            "integer" => v.is_u64() || v.is_i64(),
            "boolean" => v.is_boolean(),
            _ => return fail(&format!("unsupported type {t}")),
        };
        if !ok {
            return fail(&format!("expected {t}, got {v}"));
        }
    }
    if let Some(options) = schema.get("enum").and_then(Value::as_array) {
        if !options.contains(v) {
            return fail(&format!("{v} not in enum"));
        }
    }
    if let (Some(min), Some(n)) = (schema.get("minimum").and_then(Value::as_i64), v.as_i64()) {
        if n < min {
            return fail("below minimum");
        }
    }
    if let (Some(max), Some(n)) = (schema.get("maximum").and_then(Value::as_i64), v.as_i64()) {
        if n > max {
            return fail("above maximum");
        }
    }
    if let Some(obj) = v.as_object() {
        for req in schema
            .get("required")
            .and_then(Value::as_array)
            .into_iter()
            .flatten()
        {
            if !obj.contains_key(req.as_str().unwrap()) {
                return fail(&format!("missing {req}"));
            }
        }
        let props = schema.get("properties").and_then(Value::as_object);
        for (k, child) in obj {
            match props.and_then(|p| p.get(k)) {
                Some(s) => validate(s, child, &format!("{path}.{k}"))?,
                None => match schema.get("additionalProperties") {
                    Some(Value::Bool(false)) => return fail(&format!("unexpected key {k}")),
                    Some(s @ Value::Object(_)) => validate(s, child, &format!("{path}.{k}"))?,
                    _ => {}
                },
            }
        }
    }
    if let Some(items) = v.as_array() {
        if let Some(min) = schema.get("minItems").and_then(Value::as_u64) {
            if (items.len() as u64) < min {
                return fail("too few items");
            }
        }
        if let Some(s) = schema.get("items") {
            for (i, item) in items.iter().enumerate() {
                validate(s, item, &format!("{path}[{i}]"))?;
            }
        }
    }
    Ok(())
}

fn assert_schema_valid(command: &[&str]) {
    let mut schema_args = command.to_vec();
    schema_args.push("--schema");
    let schema = json(&schema_args);
    let doc = json(command);
    if let Err(e) = validate(&schema, &doc, "$") {
        panic!("{command:?} violates its schema: {e}");
    }
}

#[test]
fn dmax_examples() {
    assert_eq!(
        stdout(&["dmax", "16..18", "--format", "csv"]),
        "g,dmax\n16,16\n17,16\n18,20\n"
    );
    assert_eq!(stdout(&["dmax", "1", "--format", "csv"]), "g,dmax\n1,0\n");
    assert!(stdout(&["dmax", "100"]).contains("| 100 | 625 |"));
}

#[test]
fn dmax_usage_errors() {
    assert_eq!(code(&["dmax", "5..3"]), Some(2));
    assert_eq!(code(&["dmax", "x"]), Some(2));
    assert_eq!(code(&["dmax", "0"]), Some(2));
    assert_eq!(code(&["dmax"]), Some(2));
    assert_eq!(code(&["dmax", "1..2000000"]), Some(2));
}

#[test]
fn tables_check_passes() {
    let out = run(&["tables", "--format", "csv", "--check"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("24,>=2,>=34,<=36,>=16,>=1,>=3,<=22"));
}

#[test]
fn tables_markdown_header() {
    let md = stdout(&["tables", "--format", "markdown"]);
    assert!(md.contains("| g | 3 | 4 | 5 | 6 | 15 | 16 | 17 | 18 | 100 |"));
}

#[test]
fn tables_conjectural_is_labelled() {
    let md = stdout(&["tables", "--conjectural", "--check"]);
    assert!(md.contains("(conjectural)"));
    let doc = json(&["tables", "--conjectural", "--format", "json"]);
    let cols = doc["tables"][1]["columns"].as_array().unwrap();
    assert_eq!(cols.last().unwrap()["conjectural"], true);
}

#[test]
fn verify_examples() {
    let n = json(&["verify", "lemma-N", "--sum-max", "60"]);
    assert_eq!(n["status"], "pass");

    let d = json(&["verify", "lemma-dmax", "--g-max", "4000"]);
    assert_eq!(d["status"], "pass");
    let w = d["witnesses"].as_array().unwrap();
    assert!(w
        .iter()
        .all(|p| p[0] == 1 && p[1].as_u64().unwrap() % 2 == 0 && p[1].as_u64().unwrap() >= 16));

    let e = json(&["verify", "prop-estimate", "--g-max", "2000"]);
    assert_eq!(e["status"], "pass");
    let genera: Vec<u64> = e["witnesses"]
        .as_array()
        .unwrap()
        .iter()
        .map(|w| w["g"].as_u64().unwrap())
        .collect();
    let expected: Vec<u64> = std::iter::once(2).chain((16..=2000).step_by(2)).collect();
    assert_eq!(genera, expected);
}

#[test]
fn verify_every_lemma_passes() {
    for lemma in [
        "lemma-dmax",
        "lemma-N",
        "claim-F",
        "prop-estimate",
        "remark-domination",
        "cor-C",
        "cor-decoupled",
        "thm-B",
        "non-decoupled",
    ] {
        assert_eq!(json(&["verify", lemma])["status"], "pass", "{lemma}");
    }
}

#[test]
fn verify_usage_errors() {
    assert_eq!(code(&["verify", "lemma-X"]), Some(2));
    assert_eq!(code(&["verify"]), Some(2));
    assert_eq!(code(&["verify", "lemma-dmax", "--sum-max", "10"]), Some(2));
    assert_eq!(code(&["verify", "lemma-N", "--sum-max", "200"]), Some(2));
    assert_eq!(code(&["verify", "cor-C", "--g-max", "30"]), Some(2));
    assert_eq!(
        code(&["verify", "cor-C", "--g-max", "30", "--unsafe-no-ceiling"]),
        Some(0)
    );
    assert_eq!(code(&["--jobs", "0", "verify", "cor-C"]), Some(2));
}

#[test]
fn explain_examples() {
    let e16 = stdout(&["explain", "16"]);
    assert!(e16.contains("dmc(A_16) = 16"));
    assert!(e16.contains("case (iii)"));
    assert!(e16.contains("SpecialFamily(2,8)") && e16.contains("k=2, n=8"));

    let e19 = stdout(&["explain", "19"]);
    assert!(e19.contains("case (iv)"));
    assert!(e19.contains("ProductWithPoint(SpecialFamily(2,9)), dim 20"));

    let e7 = stdout(&["explain", "7"]);
    assert!(e7.contains("case (ii)") && e7.contains("HodgeGeneric, dim 6"));

    let e17 = json(&["explain", "17", "--format", "json"]);
    assert_eq!(e17["attained_by"].as_array().unwrap().len(), 2);

    assert_eq!(code(&["explain", "0"]), Some(2));
    assert_eq!(code(&["explain"]), Some(2));
    assert_eq!(code(&["explain", "-3"]), Some(2));
}

#[test]
fn catalog_lists_rows() {
    let doc = json(&["catalog", "--rep-dim-max", "8"]);
    let cases = doc["cases"].as_array().unwrap();
    assert_eq!(cases[0]["case"], "A1");
    assert!(cases.iter().any(|c| c["case"] == "D4"));
    assert!(stdout(&["catalog", "--format", "csv"]).starts_with("case,params,"));
}

#[test]
fn json_outputs_match_schemas() {
    assert_schema_valid(&["dmax", "1..40", "--format", "json"]);
    assert_schema_valid(&["tables", "--format", "json", "--conjectural"]);
    assert_schema_valid(&["verify", "claim-F", "--g-max", "12"]);
    assert_schema_valid(&["explain", "17", "--format", "json"]);
    assert_schema_valid(&["explain", "2", "--format", "json", "--timestamp"]);
    assert_schema_valid(&["catalog", "--rep-dim-max", "128"]);
}

#[test]
fn output_is_deterministic() {
    let a = stdout(&["--jobs", "1", "verify", "lemma-N", "--sum-max", "30"]);
    let b = stdout(&["--jobs", "4", "verify", "lemma-N", "--sum-max", "30"]);
    assert_eq!(a, b);
    assert_eq!(
        stdout(&["tables", "--format", "json"]),
        stdout(&["tables", "--format", "json"])
    );
}

#[test]
fn timestamp_is_opt_in() {
    assert!(json(&["dmax", "3", "--format", "json"])
        .get("generated_at")
        .is_none());
    assert!(json(&["dmax", "3", "--format", "json", "--timestamp"])["generated_at"].is_u64());
    assert!(stdout(&["dmax", "3", "--timestamp"]).starts_with("# generated_at: "));
}

#[test]
fn out_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    let out = run(&["tables", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.starts_with("# table1\ngenus,"));
}
