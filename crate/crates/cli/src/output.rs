use bodylink_core::units::round_sig9;
use serde_json::{Map, Number, Value};

/// JSON number at 9 significant digits; non-finite values become strings.
pub fn num(x: f64) -> Value {
    match Number::from_f64(round_sig9(x)) {
        Some(n) if x.is_finite() => Value::Number(n),
        _ => Value::String(
            if x.is_nan() {
                "nan"
            } else if x > 0.0 {
                "inf"
            } else {
                "-inf"
            }
            .into(),
        ),
    }
}

/// Round every float in a serialized value.
pub fn round_all(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => *v = num(n.as_f64().unwrap()),
        Value::Array(items) => items.iter_mut().for_each(round_all),
        Value::Object(map) => map.values_mut().for_each(round_all),
        _ => {}
    }
}

pub fn json_line(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Plain-text rendering: `key  value` lines, nested objects flattened with
/// dotted keys, arrays of objects as column tables.
pub fn table(v: &Value) -> String {
    let mut lines = Vec::new();
    let mut tables = Vec::new();
    flatten("", v, &mut lines, &mut tables);
    let width = lines.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in &lines {
        out.push_str(&format!("{k:<width$}  {v}\n"));
    }
    for (name, rows) in tables {
        out.push('\n');
        out.push_str(&format!("{name}\n"));
        out.push_str(&render_rows(&rows));
    }
    out
}

fn flatten(
    prefix: &str,
    v: &Value,
    lines: &mut Vec<(String, String)>,
    tables: &mut Vec<(String, Vec<Map<String, Value>>)>,
) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(map) => {
            for (k, child) in map {
                flatten(&key(k), child, lines, tables);
            }
        }
        Value::Array(items) if !items.is_empty() && items.iter().all(Value::is_object) => {
            let rows = items
                .iter()
                .filter_map(|i| i.as_object().cloned())
                .collect();
            tables.push((prefix.to_string(), rows));
        }
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(scalar).collect();
            lines.push((prefix.to_string(), parts.join(", ")));
        }
        other => lines.push((prefix.to_string(), scalar(other))),
    }
}

fn render_rows(rows: &[Map<String, Value>]) -> String {
    let headers: Vec<&String> = rows[0].keys().collect();
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            headers
                .iter()
                .map(|h| r.get(*h).map(scalar).unwrap_or_default())
                .collect()
        })
        .collect();
    let widths: Vec<usize> = headers
        .iter()
        .enumerate()
        .map(|(i, h)| {
            cells
                .iter()
                .map(|c| c[i].len())
                .chain([h.len()])
                .max()
                .unwrap()
        })
        .collect();
    let mut out = String::new();
    let line = |cols: Vec<&str>| {
        let padded: Vec<String> = cols
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    out.push_str(&line(headers.iter().map(|h| h.as_str()).collect()));
    for c in &cells {
        out.push_str(&line(c.iter().map(String::as_str).collect()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn numbers_are_rounded_and_infinities_named() {
        assert_eq!(num(-7.077439_84321), json!(-7.07743984));
        assert_eq!(num(f64::INFINITY), json!("inf"));
        assert_eq!(num(f64::NEG_INFINITY), json!("-inf"));
        let mut v = json!({"a": [1.0000000004, {"b": 2.123456789123}]});
        round_all(&mut v);
        assert_eq!(v, json!({"a": [1.0, {"b": 2.12345679}]}));
    }

    #[test]
    fn table_layout() {
        let v =
            json!({"x": 1, "nested": {"y": "z"}, "rows": [{"f": 1, "g": 22}, {"f": 333, "g": 4}]});
        assert_eq!(
            table(&v),
            "nested.y  z\nx         1\n\nrows\n  f   g\n  1  22\n333   4\n"
        );
    }
}
