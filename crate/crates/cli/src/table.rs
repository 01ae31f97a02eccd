use std::fmt::Write as _;

use serde_json::{Map, Value};

use crate::Format;

/// One result table, rendered as aligned text, CSV or a JSON array of
/// objects. Rows may carry a trace object that only the JSON form shows.
pub struct Table {
    headers: Vec<&'static str>,
    rows: Vec<Vec<Value>>,
    traces: Vec<Option<Value>>,
}

impl Table {
    pub fn new(headers: &[&'static str]) -> Self {
        Table { headers: headers.to_vec(), rows: Vec::new(), traces: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        self.push_traced(row, None);
    }

    pub fn push_traced(&mut self, row: Vec<Value>, trace: Option<Value>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
        self.traces.push(trace);
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => {
                let mut out = self.headers.join(",");
                out.push('\n');
                for row in &self.rows {
                    out.push_str(&row.iter().map(cell_text).collect::<Vec<_>>().join(","));
                    out.push('\n');
                }
                out
            }
            Format::Plain => {
                let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(cell_text).collect()).collect();
                let widths: Vec<usize> = (0..self.headers.len())
                    .map(|i| cells.iter().map(|r| r[i].len()).chain([self.headers[i].len()]).max().unwrap_or(0))
                    .collect();
                let mut out = String::new();
                let line = |out: &mut String, items: &mut dyn Iterator<Item = (usize, &str)>| {
                    let parts: Vec<String> = items.map(|(i, s)| format!("{s:<w$}", w = widths[i])).collect();
                    let _ = writeln!(out, "{}", parts.join("  ").trim_end());
                };
                line(&mut out, &mut self.headers.iter().enumerate().map(|(i, h)| (i, *h)));
                for r in &cells {
                    line(&mut out, &mut r.iter().enumerate().map(|(i, s)| (i, s.as_str())));
                }
                out
            }
            Format::Json => {
                let items: Vec<Value> = self
                    .rows
                    .iter()
                    .zip(&self.traces)
                    .map(|(r, t)| {
                        let mut obj: Map<String, Value> =
                            self.headers.iter().map(|h| h.to_string()).zip(r.iter().cloned()).collect();
                        if let Some(t) = t {
                            obj.insert("trace".into(), t.clone());
                        }
                        Value::Object(obj)
                    })
                    .collect();
                let mut s = serde_json::to_string(&items).expect("table JSON");
                s.push('\n');
                s
            }
        }
    }
}

fn cell_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}
