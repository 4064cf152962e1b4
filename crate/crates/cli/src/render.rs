//! JSON, CSV and aligned-table views of a [`QueryResult`].

use serde_json::{json, Map, Value};

use crate::{Format, QueryResult};

pub fn render(result: &QueryResult, format: Format) -> Result<String, String> {
    match format {
        Format::Json => serde_json::to_string_pretty(result).map(|s| s + "\n").map_err(|e| e.to_string()),
        Format::Csv => {
            let (header, rows) = tabulate(&result.payload);
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&header).map_err(|e| e.to_string())?;
            for row in rows {
                w.write_record(&row).map_err(|e| e.to_string())?;
            }
            String::from_utf8(w.into_inner().map_err(|e| e.to_string())?).map_err(|e| e.to_string())
        }
        Format::Table => {
            let (header, rows) = tabulate(&result.payload);
            let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
            for row in &rows {
                for (w, cell) in widths.iter_mut().zip(row) {
                    *w = (*w).max(cell.chars().count());
                }
            }
            let line = |cells: &[String]| {
                let padded: Vec<String> =
                    cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}", w = *w)).collect();
                padded.join("  ").trim_end().to_string() + "\n"
            };
            let mut out = line(&header);
            out += &line(&widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>());
            for row in &rows {
                out += &line(row);
            }
            Ok(out)
        }
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// Rows come from an array payload, or from the `rows` field of an object payload;
/// any other object becomes a single row. Nested values are inlined as JSON.
fn tabulate(payload: &Value) -> (Vec<String>, Vec<Vec<String>>) {
    let records: Vec<Map<String, Value>> = match payload {
        Value::Array(items) => items.iter().map(as_record).collect(),
        Value::Object(map) => match map.get("rows") {
            Some(Value::Array(items)) => items.iter().map(as_record).collect(),
            _ => vec![map.clone()],
        },
        other => vec![as_record(other)],
    };
    let mut header: Vec<String> = Vec::new();
    for r in &records {
        for k in r.keys() {
            if !header.contains(k) {
                header.push(k.clone());
            }
        }
    }
    let rows = records
        .iter()
        .map(|r| header.iter().map(|k| r.get(k).map(cell).unwrap_or_default()).collect())
        .collect();
    (header, rows)
}

fn as_record(v: &Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m.clone(),
        other => {
            let mut m = Map::new();
            m.insert("value".into(), other.clone());
            m
        }
    }
}

pub fn error_json(command: &str, e: &kmx_core::Error) -> Value {
    use kmx_core::Error::*;
    let (kind, details) = match e {
        InvalidInput(_) => ("invalid_input", json!({})),
        MalformedCharacter(_) => ("malformed_character", json!({})),
        InvalidHomomorphism(_) => ("invalid_homomorphism", json!({})),
        MixedRings(_) => ("mixed_rings", json!({})),
        DimensionMismatch { expected, got } => ("dimension_mismatch", json!({"expected": expected, "got": got})),
        Unsupported(_) => ("unsupported", json!({})),
        OutOfWindow { n, min_n } => ("out_of_window", json!({"n": n, "min_n": min_n})),
        NotLoopElement(_) => ("not_loop_element", json!({})),
        BudgetExceeded { budget } => ("budget_exceeded", json!({"budget": budget})),
    };
    json!({
        "command": command,
        "error": {"kind": kind, "message": e.to_string(), "details": details},
    })
}
