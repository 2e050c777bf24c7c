//! Rendering of reports as canonical JSON or as a plain table.

use serde_json::Value;

/// Pretty JSON with sorted keys and a trailing newline.
pub fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialise");
    s.push('\n');
    s
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Array(a) => a.iter().map(scalar).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Object(_) => false,
        Value::Array(a) => a.iter().all(|x| !x.is_object() && !x.is_array()),
        _ => true,
    }
}

/// `degrees`/`dims`/`certified` columns side by side.
fn degree_columns(o: &serde_json::Map<String, Value>, indent: &str, out: &mut String) -> bool {
    let (Some(Value::Array(ds)), Some(Value::Array(dims))) = (o.get("degrees"), o.get("dims")) else {
        return false;
    };
    let cert = o.get("certified").and_then(Value::as_array);
    out.push_str(&format!("{indent}{:>8} {:>8} {:>10}\n", "degree", "dim", "certified"));
    for (i, (d, n)) in ds.iter().zip(dims).enumerate() {
        let c = cert.and_then(|c| c.get(i)).map_or("-".to_string(), scalar);
        out.push_str(&format!("{indent}{:>8} {:>8} {:>10}\n", scalar(d), scalar(n), c));
    }
    true
}

fn render_into(v: &Value, indent: &str, out: &mut String) {
    match v {
        Value::Object(o) => {
            let columns = degree_columns(o, indent, out);
            for (k, x) in o {
                if columns && ["degrees", "dims", "certified"].contains(&k.as_str()) {
                    continue;
                }
                if is_flat(x) {
                    out.push_str(&format!("{indent}{k}: {}\n", scalar(x)));
                } else {
                    out.push_str(&format!("{indent}{k}:\n"));
                    render_into(x, &format!("{indent}  "), out);
                }
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                if is_flat(x) {
                    out.push_str(&format!("{indent}[{i}] {}\n", scalar(x)));
                } else {
                    out.push_str(&format!("{indent}[{i}]\n"));
                    render_into(x, &format!("{indent}  "), out);
                }
            }
        }
        other => out.push_str(&format!("{indent}{}\n", scalar(other))),
    }
}

/// Human-readable rendering; the JSON form is the canonical one.
pub fn render_table(v: &Value) -> String {
    let mut out = String::new();
    render_into(v, "", &mut out);
    out
}
