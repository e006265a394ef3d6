use crate::Format;
use serde_json::Value;

pub fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(v).expect("json values serialize"),
        Format::Table => table(v),
    }
}

// One line per top-level field; arrays of records get one line per entry.
fn table(v: &Value) -> String {
    let Value::Object(map) = v else { return v.to_string() };
    let mut lines = Vec::new();
    for (k, x) in map {
        match x {
            Value::Array(items) if items.iter().all(Value::is_object) && !items.is_empty() => {
                lines.push(format!("{k}:"));
                lines.extend(items.iter().map(|it| format!("  {it}")));
            }
            Value::String(s) => lines.push(format!("{k}: {s}")),
            _ => lines.push(format!("{k}: {x}")),
        }
    }
    lines.join("\n")
}
