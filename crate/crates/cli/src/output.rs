//! Rendering of JSON reports for terminals.

use serde_json::{Map, Value};

/// Wraps a report with the command name and crate version.
pub fn envelope(command: &str, report: Value) -> Value {
    let mut map = Map::new();
    map.insert("command".into(), Value::String(command.into()));
    map.insert("version".into(), Value::String(env!("CARGO_PKG_VERSION").into()));
    match report {
        Value::Object(fields) => map.extend(fields),
        other => {
            map.insert("result".into(), other);
        }
    }
    Value::Object(map)
}

/// `key: value` lines. Scalars and flat arrays stay on one line; nested
/// objects are indented; arrays of objects become `-` items.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, v, 0);
    out
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.iter().all(|i| !i.is_object()),
        Value::Object(_) => false,
        _ => true,
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn write_value(out: &mut String, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                if is_flat(val) {
                    out.push_str(&format!("{pad}{k}: {}\n", inline(val)));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    write_value(out, val, indent + 1);
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                if is_flat(item) {
                    out.push_str(&format!("{pad}- {}\n", inline(item)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    write_value(out, item, indent + 1);
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", inline(other))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn nested_layout() {
        let v = json!({"a": 1, "b": [1, 2], "c": {"d": "x"}, "e": [{"f": null}]});
        assert_eq!(render_text(&v), "a: 1\nb: [1,2]\nc:\n  d: x\ne:\n  -\n    f: -\n");
    }

    #[test]
    fn envelope_adds_version() {
        let v = envelope("analyze", json!({"n": 3}));
        assert_eq!(v["command"], "analyze");
        assert_eq!(v["n"], 3);
        assert!(v["version"].is_string());
    }
}
