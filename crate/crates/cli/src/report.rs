//! Report assembly and emission: one JSON object per invocation on stdout,
//! machine-readable errors on stderr, all result numbers at 12 significant
//! digits (inputs are echoed at full precision so payloads round-trip).

use serde_json::{json, Map, Value};

pub const VERSION_STRING: &str = concat!("hotspots ", env!("CARGO_PKG_VERSION"));

/// Round a result value to 12 significant digits, as a JSON number.
pub fn sig12(x: f64) -> Value {
    if !x.is_finite() {
        // Reports only carry finite numbers; encode the exception readably.
        return json!(format!("{x}"));
    }
    let rounded: f64 = format!("{x:.11e}").parse().unwrap();
    json!(rounded)
}

pub fn report(command: &str, inputs: Value, results: Value) -> Value {
    json!({
        "command": command,
        "inputs": inputs,
        "results": results,
        "versions": VERSION_STRING,
    })
}

pub fn emit_json(value: &Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("report serialization"));
}

/// Error payload on stderr; the caller picks the exit code.
pub fn emit_error(kind: &str, message: &str) {
    let payload = json!({ "error": { "kind": kind, "message": message } });
    eprintln!("{payload}");
}

/// A CSV line from (already formatted) fields.
pub fn csv_line(fields: &[String]) -> String {
    fields.join(",")
}

/// Format a float the same way `sig12` rounds it, for CSV output.
pub fn sig12_str(x: f64) -> String {
    match sig12(x) {
        Value::Number(n) => n.to_string(),
        other => other.to_string(),
    }
}

/// Merge extra key/value pairs into a JSON object.
pub fn extend(base: Value, extra: Vec<(&str, Value)>) -> Value {
    let mut map: Map<String, Value> = base.as_object().cloned().unwrap_or_default();
    for (k, v) in extra {
        map.insert(k.to_string(), v);
    }
    Value::Object(map)
}
