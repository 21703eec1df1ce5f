//! Tabular output with a self-describing header, as CSV or JSON.

use serde::Serialize;
use serde_json::{json, Map, Value};

pub struct Table {
    pub command: &'static str,
    pub config: Value,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
    /// Scalar results reported alongside the rows.
    pub summary: Map<String, Value>,
}

impl Table {
    pub fn new(command: &'static str, config: &impl Serialize, columns: &[&str]) -> Self {
        Self {
            command,
            config: serde_json::to_value(config).expect("config serializes"),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            summary: Map::new(),
        }
    }

    pub fn note(&mut self, key: &str, value: impl Serialize) {
        self.summary
            .insert(key.into(), serde_json::to_value(value).expect("value serializes"));
    }

    pub fn csv(&self) -> String {
        let mut out = format!("# alphafid {} {}\n", env!("CARGO_PKG_VERSION"), self.command);
        out += &format!("# config: {}\n", self.config);
        for (k, v) in &self.summary {
            out += &format!("# {k}: {v}\n");
        }
        out += &format!("# columns: {}\n", self.columns.join(","));
        out += &self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(cell).collect();
            out += &cells.join(",");
            out.push('\n');
        }
        out
    }

    pub fn json(&self) -> String {
        let doc = json!({
            "tool": format!("alphafid {}", env!("CARGO_PKG_VERSION")),
            "command": self.command,
            "config": self.config,
            "summary": self.summary,
            "columns": self.columns,
            "rows": self.rows,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("json serializes");
        s.push('\n');
        s
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// `x` with `digits` significant digits in positional notation.
pub fn significant(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - magnitude).max(0) as usize;
    let s = format!("{x:.decimals$}");
    // rounding can carry into a new leading digit, e.g. 0.9999… → 1.000…
    let carried = s.parse::<f64>().is_ok_and(|r| r.abs() >= 10f64.powi(magnitude as i32 + 1));
    if carried && decimals > 0 {
        return format!("{x:.prec$}", prec = decimals - 1);
    }
    s
}
