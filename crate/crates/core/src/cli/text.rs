//! Plain-text view of a report: scalars as `key: value`, lists of flat
//! records as aligned tables, everything else indented.

use serde_json::{Map, Value};

use super::report::Report;

pub fn render(r: &Report) -> String {
    let mut out = format!("{} {} · {}\n", r.tool, r.version, r.subcommand);
    for i in &r.inputs {
        out.push_str(&format!("input {} sha256 {}\n", i.path, i.sha256));
    }
    if let Value::Object(o) = &r.options {
        let opts: Vec<String> = o.iter().map(|(k, v)| format!("{k}={}", inline(v))).collect();
        out.push_str(&format!("options {}\n", opts.join(" ")));
    }
    out.push('\n');
    match &r.payload {
        Value::Object(o) => object(&mut out, o, 0),
        v => out.push_str(&format!("{}\n", inline(v))),
    }
    out
}

fn inline(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Array(a) => format!("[{}]", a.iter().map(inline).collect::<Vec<_>>().join(", ")),
        Value::Object(o) => {
            let parts: Vec<String> = o.iter().map(|(k, v)| format!("{k}: {}", inline(v))).collect();
            format!("{{{}}}", parts.join(", "))
        }
        v => v.to_string(),
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Object(o) => o.values().all(|x| !x.is_object() && !x.as_array().is_some_and(|a| a.iter().any(Value::is_object))),
        _ => false,
    }
}

fn object(out: &mut String, o: &Map<String, Value>, depth: usize) {
    let pad = "  ".repeat(depth);
    for (k, v) in o {
        match v {
            Value::Object(inner) => {
                out.push_str(&format!("{pad}{k}:\n"));
                object(out, inner, depth + 1);
            }
            Value::Array(a) if !a.is_empty() && a.iter().all(is_flat) => {
                out.push_str(&format!("{pad}{k}:\n"));
                table(out, a, depth + 1);
            }
            Value::Array(a) if a.iter().any(Value::is_object) => {
                out.push_str(&format!("{pad}{k}:\n"));
                for (n, x) in a.iter().enumerate() {
                    out.push_str(&format!("{pad}  [{n}]\n"));
                    match x {
                        Value::Object(inner) => object(out, inner, depth + 2),
                        x => out.push_str(&format!("{pad}    {}\n", inline(x))),
                    }
                }
            }
            v => out.push_str(&format!("{pad}{k}: {}\n", inline(v))),
        }
    }
}

fn table(out: &mut String, rows: &[Value], depth: usize) {
    let pad = "  ".repeat(depth);
    let mut cols: Vec<String> = Vec::new();
    for r in rows {
        for k in r.as_object().expect("flat record").keys() {
            if !cols.contains(k) {
                cols.push(k.clone());
            }
        }
    }
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| cols.iter().map(|c| r.get(c).map_or("-".into(), inline)).collect())
        .collect();
    let widths: Vec<usize> = cols
        .iter()
        .enumerate()
        .map(|(k, c)| cells.iter().map(|r| r[k].chars().count()).chain([c.chars().count()]).max().unwrap_or(0))
        .collect();
    let line = |xs: &[String]| {
        let parts: Vec<String> = xs.iter().zip(&widths).map(|(x, w)| format!("{x:<w$}")).collect();
        format!("{pad}{}\n", parts.join("  ").trim_end())
    };
    out.push_str(&line(&cols));
    for r in &cells {
        out.push_str(&line(r));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn tables_and_scalars() {
        let r = Report {
            tool: "quiverbox",
            version: "0",
            subcommand: "x".into(),
            inputs: vec![],
            options: json!({ "seed": 1 }),
            payload: json!({ "dim": 2, "rows": [{ "a": 1, "b": "xy" }, { "a": 10, "b": null }] }),
        };
        let t = render(&r);
        assert!(t.contains("options seed=1\n"));
        assert!(t.contains("dim: 2\n"));
        assert!(t.contains("  a   b\n  1   xy\n  10  -\n"));
    }
}
