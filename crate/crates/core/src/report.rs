//! Machine-readable run reports in JSON, CSV or aligned text.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};
use serde_json::Value;

use crate::error::Error;

/// Serializes big integers as decimal strings so no precision is lost in JSON.
pub fn ser_bigints<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

/// Output encodings accepted by `--format`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Table,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            "table" => Ok(Self::Table),
            other => Err(Error::Parse(format!("unknown format {other:?}"))),
        }
    }
}

/// Rows for the CSV and table renderings.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push<S: ToString>(&mut self, row: impl IntoIterator<Item = S>) {
        self.rows.push(row.into_iter().map(|c| c.to_string()).collect());
    }
}

/// One command run: its inputs, results and the horizons/caps it used.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub horizons: Value,
    pub timing_ms: Option<f64>,
    pub table: Option<Table>,
}

impl Report {
    pub fn new(command: impl Into<String>, inputs: Value, results: Value, horizons: Value) -> Self {
        Self {
            command: command.into(),
            inputs,
            results,
            horizons,
            timing_ms: None,
            table: None,
        }
    }

    pub fn with_table(mut self, table: Table) -> Self {
        self.table = Some(table);
        self
    }

    /// JSON object with keys in sorted order.
    pub fn to_json(&self) -> Value {
        let mut obj = serde_json::Map::new();
        obj.insert("command".into(), Value::String(self.command.clone()));
        obj.insert("inputs".into(), self.inputs.clone());
        obj.insert("results".into(), self.results.clone());
        obj.insert("horizons".into(), self.horizons.clone());
        if let Some(t) = self.timing_ms {
            obj.insert("timing_ms".into(), serde_json::json!(t));
        }
        Value::Object(obj)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("plain JSON value");
                s.push('\n');
                s
            }
            Format::Csv => render_csv(&self.tabular()),
            Format::Table => render_table(&self.tabular()),
        }
    }

    /// The explicit table, or the results flattened to `key,value` rows.
    fn tabular(&self) -> Table {
        if let Some(t) = &self.table {
            return t.clone();
        }
        let mut t = Table::new(["key", "value"]);
        flatten("", &self.results, &mut t);
        t
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Table) {
    let join = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                flatten(&join(k), x, out);
            }
        }
        Value::Array(a) if a.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&join(&i.to_string()), x, out);
            }
        }
        Value::String(s) => out.push([prefix.to_string(), s.clone()]),
        other => out.push([prefix.to_string(), other.to_string()]),
    }
}

fn render_csv(t: &Table) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&t.columns).expect("in-memory write");
    for row in &t.rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush to Vec")).expect("utf8 input")
}

fn render_table(t: &Table) -> String {
    let mut widths: Vec<usize> = t.columns.iter().map(|c| c.chars().count()).collect();
    for row in &t.rows {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }
    let mut out = String::new();
    let line = |cells: &[String], out: &mut String| {
        let parts: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:<w$}"))
            .collect();
        let _ = writeln!(out, "{}", parts.join("  ").trim_end());
    };
    line(&t.columns, &mut out);
    let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
    line(&rule, &mut out);
    for row in &t.rows {
        line(row, &mut out);
    }
    out
}

/// Serializes any value to a JSON tree; panics only on non-string map keys.
pub fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable report value")
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn json_keys_sorted_and_stable() {
        let r = Report::new("cz", json!({"z": 1, "a": 2}), json!([1, 2]), json!({"k_max": 3}));
        let a = r.render(Format::Json);
        assert_eq!(a, r.clone().render(Format::Json));
        let pos = |k: &str| a.find(k).unwrap();
        assert!(pos("\"command\"") < pos("\"horizons\""));
        assert!(pos("\"horizons\"") < pos("\"inputs\""));
        assert!(pos("\"a\"") < pos("\"z\""));
        assert!(!a.contains("timing"));
    }

    #[test]
    fn csv_quotes_and_flattens() {
        let r = Report::new("x", json!({}), json!({"b": {"c": "1,2"}, "a": true}), json!({}));
        assert_eq!(r.render(Format::Csv), "key,value\na,true\nb.c,\"1,2\"\n");
    }

    #[test]
    fn table_alignment() {
        let mut t = Table::new(["k", "degree"]);
        t.push(["1", "2"]);
        t.push(["10", "24"]);
        let r = Report::new("x", json!({}), json!({}), json!({})).with_table(t);
        assert_eq!(r.render(Format::Table), "k   degree\n--  ------\n1   2\n10  24\n");
    }

    #[test]
    fn formats_parse() {
        assert_eq!("CSV".parse::<Format>().unwrap(), Format::Csv);
        assert!("xml".parse::<Format>().is_err());
    }
}
