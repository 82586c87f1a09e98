//! Report rows, summaries and their JSON/CSV encodings.
//!
//! Output is byte-stable: keys are ordered, floats go through a fixed formatter, and nothing
//! depends on time, thread count or hash order.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Map, Value};

/// Largest magnitude that survives a round trip through an IEEE double consumer unchanged.
const EXACT_LIMIT: f64 = 9_007_199_254_740_992.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Warn,
    Info,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Warn => "warn",
            Status::Info => "info",
        }
    }
}

/// A JSON number, or its decimal string when it is too large for exact double consumers or
/// not finite.
pub fn num(x: f64) -> Value {
    if x.is_finite() && x.abs() <= EXACT_LIMIT {
        json!(x)
    } else {
        Value::String(format!("{x:e}"))
    }
}

pub fn num_u64(x: u64) -> Value {
    if x as f64 <= EXACT_LIMIT {
        json!(x)
    } else {
        Value::String(x.to_string())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub symbol: String,
    pub check: String,
    pub status: Status,
    pub values: BTreeMap<String, Value>,
    pub message: Option<String>,
}

impl Row {
    pub fn new(symbol: &str, check: &str, status: Status) -> Self {
        Row {
            symbol: symbol.to_string(),
            check: check.to_string(),
            status,
            values: BTreeMap::new(),
            message: None,
        }
    }

    pub fn num(mut self, key: &str, x: f64) -> Self {
        self.values.insert(key.to_string(), num(x));
        self
    }

    pub fn count(mut self, key: &str, n: u64) -> Self {
        self.values.insert(key.to_string(), num_u64(n));
        self
    }

    pub fn opt(mut self, key: &str, x: Option<f64>) -> Self {
        self.values.insert(key.to_string(), x.map_or(Value::Null, num));
        self
    }

    pub fn text(mut self, key: &str, s: &str) -> Self {
        self.values.insert(key.to_string(), Value::String(s.to_string()));
        self
    }

    pub fn value(mut self, key: &str, v: Value) -> Self {
        self.values.insert(key.to_string(), v);
        self
    }

    pub fn message(mut self, m: impl Into<String>) -> Self {
        self.message = Some(m.into());
        self
    }

    fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("symbol".into(), json!(self.symbol));
        m.insert("check".into(), json!(self.check));
        m.insert("status".into(), json!(self.status.as_str()));
        m.insert("values".into(), Value::Object(self.values.clone().into_iter().collect()));
        if let Some(msg) = &self.message {
            m.insert("message".into(), json!(msg));
        }
        Value::Object(m)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Summary {
    pub n_pass: usize,
    pub n_fail: usize,
    pub n_warn: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub config: BTreeMap<String, Value>,
    pub rows: Vec<Row>,
}

impl Report {
    pub fn new(command: &str, config: BTreeMap<String, Value>) -> Self {
        Report {
            command: command.to_string(),
            config,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Row) {
        self.rows.push(row);
    }

    pub fn summary(&self) -> Summary {
        let mut s = Summary::default();
        for row in &self.rows {
            match row.status {
                Status::Pass => s.n_pass += 1,
                Status::Fail => s.n_fail += 1,
                Status::Warn => s.n_warn += 1,
                Status::Info => {}
            }
        }
        s
    }

    pub fn to_json(&self) -> String {
        let s = self.summary();
        let doc = json!({
            "tool": "schur-scope",
            "version": env!("CARGO_PKG_VERSION"),
            "command": self.command,
            "config": Value::Object(self.config.clone().into_iter().collect()),
            "records": self.rows.iter().map(Row::to_json).collect::<Vec<_>>(),
            "summary": {"n_pass": s.n_pass, "n_fail": s.n_fail, "n_warn": s.n_warn},
        });
        let mut out = serde_json::to_string_pretty(&doc).expect("report serializes");
        out.push('\n');
        out
    }

    /// One line per row; value columns are the sorted union of keys across rows.
    pub fn to_csv(&self) -> String {
        let keys: BTreeSet<&String> = self.rows.iter().flat_map(|r| r.values.keys()).collect();
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        let mut header = vec!["symbol", "check", "status"];
        header.extend(keys.iter().map(|k| k.as_str()));
        header.push("message");
        w.write_record(&header).expect("in-memory write");
        for row in &self.rows {
            let mut fields = vec![row.symbol.clone(), row.check.clone(), row.status.as_str().to_string()];
            fields.extend(keys.iter().map(|k| row.values.get(*k).map_or(String::new(), csv_cell)));
            fields.push(row.message.clone().unwrap_or_default());
            w.write_record(&fields).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }
}

/// Floats at 17 significant digits, locale-free.
pub fn sig17(x: f64) -> String {
    if x == 0.0 {
        "0".to_string()
    } else if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::Number(n) => match n.as_f64() {
            Some(x) if !n.is_u64() && !n.is_i64() => sig17(x),
            _ => n.to_string(),
        },
        Value::String(s) => s.clone(),
        Value::Bool(b) => b.to_string(),
        other => other.to_string(),
    }
}
