use std::process::Command;

use serde_json::{json, Value};

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_bosonorder"))
        .args(args)
        .env_remove("BOSONORDER_MAX_TERMS")
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn record(args: &[&str]) -> Value {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    serde_json::from_str(&out).expect("one json record")
}

fn terms(v: &Value) -> Vec<(u64, u64, String)> {
    v["result"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| {
            (
                t["r"].as_u64().unwrap(),
                t["s"].as_u64().unwrap(),
                t["coeff"].as_str().unwrap().to_string(),
            )
        })
        .collect()
}

#[test]
fn order_examples() {
    let v = record(&["order", "--expr", "a ad"]);
    assert_eq!(terms(&v), vec![(0, 0, "1".into()), (1, 1, "1".into())]);

    let v = record(&["order", "--expr", "(ad a)^3"]);
    assert_eq!(
        terms(&v),
        vec![(1, 1, "1".into()), (2, 2, "3".into()), (3, 3, "1".into())]
    );

    let v = record(&["order", "--expr", "a a ad ad"]);
    assert_eq!(
        terms(&v),
        vec![(0, 0, "2".into()), (1, 1, "4".into()), (2, 2, "1".into())]
    );

    let v = record(&["order", "--expr", "1/2 a ad - 1/2 a^0"]);
    assert_eq!(terms(&v), vec![(1, 1, "1/2".into())]);
}

#[test]
fn record_shape() {
    let v = record(&["order", "--expr", "ad a"]);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["command", "inputs", "mode", "result", "version"]);
    assert_eq!(v["inputs"], json!({ "expr": "ad a" }));
    assert_eq!(v["mode"], "exact");
}

#[test]
fn table_examples() {
    let v = record(&["tables", "stirling", "--n", "4"]);
    assert_eq!(
        v["result"],
        json!([["1"], ["1", "1"], ["1", "3", "1"], ["1", "7", "6", "1"]])
    );
    let v = record(&["tables", "bell", "--n", "5"]);
    assert_eq!(v["result"], json!(["1", "1", "2", "5", "15", "52"]));

    let v = record(&["tables", "genstirling", "--expr", "ad^2 a^2", "--n", "2"]);
    assert_eq!(
        v["result"]["rows"][1]["entries"],
        json!({ "2": "2", "3": "4", "4": "1" })
    );
    let w = record(&[
        "tables",
        "genstirling",
        "--alpha",
        "2:1",
        "--d",
        "0",
        "--n",
        "2",
    ]);
    assert_eq!(v["result"]["rows"], w["result"]["rows"]);

    let v = record(&["tables", "stirling", "--n", "10", "--k", "4"]);
    assert_eq!(v["result"]["value"], "34105");
    let v = record(&[
        "tables", "genbell", "--alpha", "1:1", "--n", "3", "--x", "1/2",
    ]);
    assert_eq!(v["result"][3]["value"], "11/8");
}

fn float_of(v: &Value) -> f64 {
    v.as_f64().unwrap()
}

#[test]
fn numeric_examples() {
    let v = record(&["numeric", "dobinski", "--n", "3", "--x", "1"]);
    assert_eq!(v["mode"], "float");
    assert!((float_of(&v["result"]["value"]) - 5.0).abs() < 1e-12);
    assert_eq!(v["result"]["exact"], "5");
    assert!(v["result"]["terms"].as_u64().unwrap() >= 10);

    let (_, out, _) = run(&["numeric", "egf", "closed", "--lambda", "0", "--x", "7"]);
    assert!(out.contains("\"value\":1.0000000000000000e+0"), "{out}");

    let v = record(&[
        "numeric", "pade", "--alpha", "ad^2 a^2", "--lambda", "-0.3", "--x", "1", "--m", "5",
        "--pade-n", "5",
    ]);
    let d0 = record(&[
        "numeric", "egf", "d0", "--alpha", "ad^2 a^2", "--lambda", "-0.3", "--x", "1",
    ]);
    let gap = float_of(&v["result"]["value"]) - float_of(&d0["result"]["value"]);
    assert!(gap.abs() < 1e-3, "gap {gap}");
    assert_eq!(v["result"]["trunc"], 10);
}

#[test]
fn coherent_and_sheffer() {
    let v = record(&[
        "numeric", "coherent", "--alpha", "1:1", "--lambda", "0.1", "--z", "0.5,0.5",
    ]);
    // <z|e^{λ a†a}|z> = exp(|z|^2 (e^λ - 1))
    let want = (0.5 * 0.1f64.exp_m1()).exp();
    assert!((float_of(&v["result"]["re"]) - want).abs() < 1e-12);

    let v = record(&["numeric", "sheffer", "--expr", "ad^2 a", "--order", "3"]);
    assert_eq!(v["mode"], "exact");
    assert_eq!(v["result"]["verified"], true);
    // T = x / (1 - λx)
    assert_eq!(
        v["result"]["T"],
        json!([
            ["0", "1"],
            ["0", "0", "1"],
            ["0", "0", "0", "1"],
            ["0", "0", "0", "0", "1"]
        ])
    );

    let v = record(&[
        "numeric", "sheffer", "--expr", "a", "--order", "2", "--z", "1",
    ]);
    assert_eq!(v["mode"], "float");
    assert_eq!(v["result"]["coherent"].as_array().unwrap().len(), 3);
}

#[test]
fn exit_statuses() {
    let (code, out, err) = run(&["order", "--expr", "ad (a"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("position"), "{err}");

    let (code, _, err) = run(&[
        "numeric", "egf", "d0", "--alpha", "2:1", "--lambda", "0.2", "--x", "1",
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("diverges"), "{err}");

    let (code, _, _) = run(&["tables", "genstirling", "--expr", "ad a + a", "--n", "2"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&[
        "numeric", "pade", "--alpha", "1:1", "--lambda", "0.1", "--x", "1",
    ]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["bogus"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["tables", "stirling", "--n", "3", "--k", "5"]);
    assert_eq!(code, 2);
}

#[test]
fn term_cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_bosonorder"))
        .args(["numeric", "dobinski", "--n", "5", "--x", "50"])
        .env("BOSONORDER_MAX_TERMS", "20")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("20 terms"));
}

#[test]
fn deterministic_and_table_mode() {
    let args = [
        "numeric",
        "egf",
        "truncated",
        "--alpha",
        "1:1,2:1",
        "--lambda",
        "-0.1",
        "--x",
        "2",
    ];
    assert_eq!(run(&args), run(&args));
    let (code, out, _) = run(&["tables", "stirling", "--n", "3", "--format", "table"]);
    assert_eq!(code, 0);
    assert!(
        out.starts_with("command  tables\nmode     exact\n"),
        "{out}"
    );
    assert!(out.contains("1  3  1"), "{out}");
}

#[test]
fn writes_out_file() {
    let dir = std::env::temp_dir().join(format!("bosonorder-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("rec.json");
    let (code, out, _) = run(&[
        "tables",
        "bell",
        "--n",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["result"], json!(["1", "1", "2", "5"]));
    std::fs::remove_dir_all(dir).unwrap();
}
