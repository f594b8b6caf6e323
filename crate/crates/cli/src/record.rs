//! One structured record per invocation.
//!
//! Field order is fixed: `command`, `inputs`, `mode`, `result`, `version`.
//! Exact values are strings of the form `p` or `p/q`; floats carry 17
//! significant digits in scientific notation.

use std::str::FromStr;

use bosonorder::arith::ratio_string;
use num_rational::BigRational;
use serde_json::{Map, Number, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Float,
}

impl Mode {
    fn as_str(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Record {
    pub command: String,
    pub inputs: Vec<(String, String)>,
    pub mode: Mode,
    pub result: Value,
}

impl Record {
    pub fn to_value(&self) -> Value {
        let mut inputs = Map::new();
        for (k, v) in &self.inputs {
            inputs.insert(k.clone(), Value::String(v.clone()));
        }
        let mut out = Map::new();
        out.insert("command".into(), Value::String(self.command.clone()));
        out.insert("inputs".into(), Value::Object(inputs));
        out.insert("mode".into(), Value::String(self.mode.as_str().into()));
        out.insert("result".into(), self.result.clone());
        out.insert(
            "version".into(),
            Value::String(env!("CARGO_PKG_VERSION").into()),
        );
        Value::Object(out)
    }

    pub fn to_json(&self) -> String {
        let mut s = self.to_value().to_string();
        s.push('\n');
        s
    }

    pub fn to_table(&self) -> String {
        let mut out = format!(
            "command  {}\nmode     {}\nversion  {}\n",
            self.command,
            self.mode.as_str(),
            env!("CARGO_PKG_VERSION")
        );
        for (k, v) in &self.inputs {
            out.push_str(&format!("input    {k}={v}\n"));
        }
        out.push('\n');
        render(&self.result, &mut out);
        out
    }
}

pub fn exact(q: &BigRational) -> Value {
    Value::String(ratio_string(q))
}

pub fn exact_int(n: &num_bigint::BigInt) -> Value {
    Value::String(n.to_string())
}

/// A finite float as a JSON number with 17 significant digits.
pub fn float(x: f64) -> Value {
    debug_assert!(x.is_finite());
    Value::Number(Number::from_str(&format!("{x:.16e}")).expect("finite float literal"))
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn is_flat_object(v: &Value) -> bool {
    v.as_object()
        .is_some_and(|m| m.values().all(|x| !x.is_array() && !x.is_object()))
}

fn render(v: &Value, out: &mut String) {
    match v {
        Value::Array(items) if !items.is_empty() && items.iter().all(is_flat_object) => {
            render_rows(items, out)
        }
        Value::Array(items) => {
            for item in items {
                match item {
                    Value::Array(row) => {
                        let cells: Vec<String> = row.iter().map(scalar).collect();
                        out.push_str(&cells.join("  "));
                        out.push('\n');
                    }
                    other => {
                        out.push_str(&scalar(other));
                        out.push('\n');
                    }
                }
            }
        }
        Value::Object(map) => {
            let width = map.keys().map(String::len).max().unwrap_or(0);
            for (k, v) in map {
                match v {
                    Value::Array(_) | Value::Object(_) => {
                        out.push_str(&format!("{k}:\n"));
                        render(v, out);
                    }
                    other => out.push_str(&format!("{k:width$}  {}\n", scalar(other))),
                }
            }
        }
        other => {
            out.push_str(&scalar(other));
            out.push('\n');
        }
    }
}

fn render_rows(items: &[Value], out: &mut String) {
    let keys: Vec<String> = items[0].as_object().unwrap().keys().cloned().collect();
    let rows: Vec<Vec<String>> = items
        .iter()
        .map(|it| {
            let m = it.as_object().unwrap();
            keys.iter()
                .map(|k| m.get(k).map(scalar).unwrap_or_default())
                .collect()
        })
        .collect();
    let widths: Vec<usize> = keys
        .iter()
        .enumerate()
        .map(|(i, k)| {
            rows.iter()
                .map(|r| r[i].len())
                .max()
                .unwrap_or(0)
                .max(k.len())
        })
        .collect();
    let line = |cells: &[String]| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect::<Vec<_>>()
            .join("  ")
    };
    out.push_str(&line(&keys));
    out.push('\n');
    for r in &rows {
        out.push_str(&line(r));
        out.push('\n');
    }
}
