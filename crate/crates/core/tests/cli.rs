use serde_json::Value;
use tcconf::cli::run;

const SCHEMA: &str = include_str!("../schema/tcconf.schema.json");

fn exec(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(
        std::iter::once("tcconf").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

/// Validates against one named definition of the shipped schema.
fn validate(def: &str, text: &str) {
    let mut schema: Value = serde_json::from_str(SCHEMA).unwrap();
    let obj = schema.as_object_mut().unwrap();
    obj.remove("anyOf");
    obj.insert("$ref".into(), Value::String(format!("#/$defs/{def}")));
    let compiled = jsonschema::JSONSchema::compile(&schema).unwrap();
    let instance: Value = serde_json::from_str(text).unwrap();
    let msgs: Vec<String> = match compiled.validate(&instance) {
        Ok(()) => Vec::new(),
        Err(errors) => errors
            .map(|e| format!("{} at {}", e, e.instance_path))
            .collect(),
    };
    assert!(msgs.is_empty(), "{def} output does not validate: {msgs:?}");
}

#[test]
fn table_json_validates_and_is_sorted() {
    let (code, out, _) = exec(&[
        "table", "--genus", "2,0,1", "--points", "2,1", "--stages", "3,2",
    ]);
    assert_eq!(code, 0);
    validate("table", &out);
    let rows: Vec<Value> = serde_json::from_str(&out).unwrap();
    assert_eq!(rows.len(), 12);
    let keys: Vec<(u64, u64, u64)> = rows
        .iter()
        .map(|r| {
            (
                r["genus"].as_u64().unwrap(),
                r["n"].as_u64().unwrap(),
                r["s"].as_u64().unwrap(),
            )
        })
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    let g1 = rows
        .iter()
        .find(|r| r["genus"] == 1 && r["n"] == 2 && r["s"] == 3)
        .unwrap();
    assert_eq!(g1["tc"], 7);
    assert_eq!(g1["certified"], true);
    let g0 = rows
        .iter()
        .find(|r| r["genus"] == 0 && r["n"] == 2 && r["s"] == 2)
        .unwrap();
    assert_eq!(g0["certified"], false);
}

#[test]
fn table_csv_columns() {
    let (code, out, _) = exec(&[
        "table", "--genus", "2", "--points", "1", "--stages", "2", "--format", "csv",
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "genus,n,s,upper,lower,tc,certified\n2,1,2,4,4,4,true\n"
    );
}

#[test]
fn certify_validates_in_both_rings() {
    for ring in ["B", "E"] {
        let (code, out, _) = exec(&[
            "certify", "--genus", "1,2", "--points", "2", "--stages", "2,3", "--ring", ring,
        ]);
        assert_eq!(
            exec(&[
                "certify",
                "--genus",
                "1",
                "--points",
                "1",
                "--stages",
                "2",
                "--ring",
                &ring.to_lowercase()
            ])
            .0,
            0
        );
        assert_eq!(code, 0, "{ring}");
        validate("certify", &out);
        let rows: Vec<Value> = serde_json::from_str(&out).unwrap();
        assert_eq!(rows.len(), 4);
        assert!(rows
            .iter()
            .all(|r| r["nonzero"] == true && r["ring"] == ring));
    }
}

#[test]
fn other_commands_validate() {
    for (def, args) in [
        ("basis", vec!["basis", "--genus", "2", "--points", "2"]),
        ("lemmas", vec!["lemmas"]),
        ("search_zcl", vec!["search-zcl", "--algebra", "torus"]),
        (
            "search_zcl",
            vec![
                "search-zcl",
                "--algebra",
                "truncated:3:2",
                "--strategy",
                "greedy",
                "--stages",
                "3",
            ],
        ),
        ("rp3", vec!["rp3"]),
    ] {
        let (code, out, err) = exec(&args);
        assert_eq!(code, 0, "{args:?}: {err}");
        validate(def, &out);
    }
}

#[test]
fn basis_counts() {
    let (_, out, _) = exec(&["basis", "--genus", "2", "--points", "2"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["dimension"], 36);
    assert_eq!(v["beta2"]["count"], 27);
    assert_eq!(v["beta2_prime"]["count"], 27);
    assert_eq!(v["a_g_dimension"], 27);
    assert_eq!(v["poincare"], serde_json::json!([1, 8, 18, 8, 1]));
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec![
            "table", "--genus", "1,2,3", "--points", "1,2,3", "--stages", "2,3,4", "--format",
            "csv",
        ],
        vec!["certify", "--genus", "2", "--points", "3", "--stages", "3"],
        vec!["lemmas", "--format", "text"],
    ] {
        let first = exec(&args);
        for _ in 0..3 {
            assert_eq!(exec(&args), first);
        }
    }
}

#[test]
fn exit_codes() {
    assert_eq!(
        exec(&["certify", "--genus", "0", "--points", "2", "--stages", "2"]).0,
        2
    );
    assert_eq!(
        exec(&["table", "--genus", "2", "--points", "1", "--stages", "1"]).0,
        2
    );
    assert_eq!(
        exec(&["table", "--genus", "2", "--points", "0", "--stages", "2"]).0,
        2
    );
    assert_eq!(exec(&["rp3", "--stages", "9"]).0, 2);
    assert_eq!(exec(&["search-zcl", "--algebra", "surface:4"]).0, 2);
    assert_eq!(exec(&["search-zcl", "--algebra", "klein"]).0, 2);
    assert_eq!(exec(&["lemmas", "--genus", "1"]).0, 2);
    assert_eq!(exec(&["frobnicate"]).0, 2);
    assert_eq!(
        exec(&["table", "--genus", "2", "--points", "1", "--stages", "2", "--format", "yaml"]).0,
        2
    );
    assert_eq!(exec(&["--help"]).0, 0);
}

#[test]
fn basis_guard_refuses_and_override_warns() {
    let (code, out, err) = exec(&["certify", "--genus", "9", "--points", "6", "--stages", "2"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("size guard"), "{err}");
    let (code, _, err) = exec(&[
        "table",
        "--genus",
        "1",
        "--points",
        "1",
        "--stages",
        "2",
        "--allow-large",
    ]);
    assert_eq!(code, 0);
    assert!(
        err.contains("warning: size guards disabled") && err.contains("basis monomials"),
        "{err}"
    );
}

#[test]
fn out_file() {
    let path = std::env::temp_dir().join(format!("tcconf-cli-test-{}.csv", std::process::id()));
    let (code, out, _) = exec(&[
        "rp3",
        "--stages",
        "2",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(written, "s,factors,nonzero,bound\n2,3,true,3\n");
}

#[test]
fn text_formats_render() {
    let (code, out, _) = exec(&[
        "certify", "--genus", "2", "--points", "2", "--stages", "2", "--format", "text",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("factor count 6 (expected 6)"));
    assert!(out.contains("support on Y(x)X and X(x)Y"));
    let (_, out, _) = exec(&["basis", "--genus", "1", "--points", "1", "--format", "text"]);
    assert!(out.lines().any(|l| l == "w1\t2"));
}
