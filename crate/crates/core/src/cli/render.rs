use serde_json::Value;

use super::{Format, Outcome};
use crate::error::{Error, Result};

pub fn render(o: &Outcome, format: Format) -> Result<String> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&o.json).expect("reports serialize");
            s.push('\n');
            Ok(s)
        }
        Format::Text => {
            let mut lines = vec![o.summary.clone()];
            flatten("", &o.json, &mut lines);
            Ok(lines.join("\n") + "\n")
        }
        Format::Dot => o
            .dot
            .clone()
            .ok_or_else(|| Error::InvalidSpec("dot output is only available for derived sequences".into())),
    }
}

/// `path=value` lines for every scalar in the report.
fn flatten(prefix: &str, v: &Value, out: &mut Vec<String>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                flatten(&key(k), x, out);
            }
        }
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let items: Vec<String> = a.iter().map(scalar).collect();
            out.push(format!("{prefix}=[{}]", items.join(", ")));
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&key(&i.to_string()), x, out);
            }
        }
        other => out.push(format!("{prefix}={}", scalar(other))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
