//! Output rendering. JSON objects use sorted keys, so identical results
//! always serialize to identical bytes. Every number is emitted twice: as
//! an exact `p/q` string and as a decimal string.

use altsum::bounds::TrueRemainder;
use altsum::euler::{AccelerationMethod, AccelerationResult};
use altsum::{
    decimal_string, DifferenceTable, Error, ExactRational, RemainderInterval, Scalar, SeriesSpec,
};
use serde_json::{json, Map, Value};

pub const SCHEMA: &str = "altsum/1";

pub fn number(x: &ExactRational, digits: usize) -> Value {
    json!({
        "exact": x.to_string(),
        "decimal": decimal_string(x, digits),
    })
}

pub fn scalar(x: &Scalar, digits: usize) -> Value {
    match x.to_exact() {
        Some(exact) => number(&exact, digits),
        None => json!({ "exact": Value::Null, "decimal": x.to_f64().to_string() }),
    }
}

/// Adds the schema tag to an object.
pub fn with_schema(mut value: Value) -> Value {
    if let Value::Object(map) = &mut value {
        map.insert("schema".into(), SCHEMA.into());
    }
    value
}

pub fn interval(iv: &RemainderInterval, digits: usize) -> Value {
    with_schema(json!({
        "n": iv.n,
        "method": iv.method.to_string(),
        "lower": number(&iv.lower, digits),
        "upper": number(&iv.upper, digits),
        "lower_strict": iv.lower_strict,
        "upper_strict": iv.upper_strict,
        "sign": iv.sign,
    }))
}

pub fn acceleration(result: &AccelerationResult, digits: usize) -> Value {
    let method = match result.method {
        AccelerationMethod::Euler { n } => format!("euler({n})"),
        AccelerationMethod::Hybrid { head, tail } => format!("hybrid({head},{tail})"),
    };
    with_schema(json!({
        "method": method,
        "value": scalar(&result.value, digits),
        "error_upper": scalar(&result.error_upper, digits),
        "underestimates": result.underestimates,
        "terms_consumed": result.terms_consumed,
        "backend": result.backend.name(),
    }))
}

pub fn true_remainder(r: &TrueRemainder, digits: usize) -> Value {
    with_schema(json!({
        "n": r.n,
        "remainder": number(&r.value, digits),
        "error_bound": number(&r.error_bound, digits),
    }))
}

pub fn table(t: &DifferenceTable, digits: usize) -> Value {
    let cells: Vec<Value> = t
        .cells()
        .map(|(r, n, v)| json!({ "r": r, "n": n, "value": number(v, digits) }))
        .collect();
    with_schema(json!({
        "series": t.source().spec.id(),
        "n_start": t.n_start(),
        "width": t.width(),
        "max_order": t.max_order(),
        "cells": cells,
    }))
}

pub fn series(spec: &SeriesSpec) -> Value {
    json!({
        "id": spec.id(),
        "display_name": spec.display_name(),
        "known_limit": spec.known_limit(),
    })
}

pub fn error(err: &Error, subcommand: &str) -> Value {
    let mut context = Map::new();
    context.insert("subcommand".into(), subcommand.into());
    for (key, value) in err.context() {
        context.insert(key.into(), value.into());
    }
    with_schema(json!({
        "error": {
            "kind": err.kind(),
            "message": err.to_string(),
            "context": context,
        }
    }))
}

pub fn usage_error(message: &str, subcommand: &str) -> Value {
    with_schema(json!({
        "error": {
            "kind": "usage",
            "message": message,
            "context": { "subcommand": subcommand },
        }
    }))
}

pub fn to_json(value: &Value) -> String {
    serde_json::to_string_pretty(value).expect("JSON values always serialize")
}

fn is_number(map: &Map<String, Value>) -> bool {
    map.len() == 2 && map.contains_key("exact") && map.contains_key("decimal")
}

fn leaf(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

/// `(path, value)` pairs with nested keys joined by `.`; exact/decimal
/// pairs stay together.
fn flatten(prefix: &str, value: &Value, out: &mut Vec<(String, Value)>) {
    let join = |key: &str| {
        if prefix.is_empty() {
            key.to_string()
        } else {
            format!("{prefix}.{key}")
        }
    };
    match value {
        Value::Object(map) if !is_number(map) => {
            for (key, v) in map {
                if prefix.is_empty() && key == "schema" {
                    continue;
                }
                flatten(&join(key), v, out);
            }
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&join(&i.to_string()), v, out);
            }
        }
        other => out.push((prefix.to_string(), other.clone())),
    }
}

pub fn to_text(value: &Value) -> String {
    let mut rows = Vec::new();
    flatten("", value, &mut rows);
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (key, v) in rows {
        let rendered = match &v {
            Value::Object(map) => format!("{}  ~ {}", leaf(&map["exact"]), leaf(&map["decimal"])),
            other => leaf(other),
        };
        out.push_str(&format!("{key:<width$}  {rendered}\n"));
    }
    out
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn to_csv(value: &Value) -> String {
    let mut rows = Vec::new();
    flatten("", value, &mut rows);
    let mut out = String::from("field,value_exact,value_decimal\n");
    for (key, v) in rows {
        let (exact, decimal) = match &v {
            Value::Object(map) => (leaf(&map["exact"]), leaf(&map["decimal"])),
            other => (leaf(other), String::new()),
        };
        out.push_str(&format!(
            "{},{},{}\n",
            csv_field(&key),
            csv_field(&exact),
            csv_field(&decimal)
        ));
    }
    out
}

pub fn table_csv(t: &DifferenceTable, digits: usize) -> String {
    let mut out = String::from("r,n,value_exact,value_decimal\n");
    for (r, n, v) in t.cells() {
        out.push_str(&format!("{r},{n},{v},{}\n", decimal_string(v, digits)));
    }
    out
}

/// Triangular layout: one line per order, cells aligned by `n`.
pub fn table_text(t: &DifferenceTable, digits: usize) -> String {
    let cells: Vec<Vec<String>> = t
        .rows()
        .iter()
        .map(|row| row.iter().map(|v| decimal_string(v, digits)).collect())
        .collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    let mut out = format!("{:>5}", "r\\n");
    for j in 0..=t.width() {
        out.push_str(&format!("  {:>width$}", t.n_start() + j));
    }
    out.push('\n');
    for (r, row) in cells.iter().enumerate() {
        out.push_str(&format!("{r:>5}"));
        for cell in row {
            out.push_str(&format!("  {cell:>width$}"));
        }
        out.push('\n');
    }
    out
}
