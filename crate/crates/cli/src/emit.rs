//! Reports as sections of rows, rendered as an aligned table, JSON or CSV.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Clone, Debug, Serialize)]
pub struct Section {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Section {
    pub fn new(title: impl Into<String>, columns: &[&str]) -> Section {
        Section {
            title: title.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn row(&mut self, cells: Vec<Value>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Document {
    pub command: String,
    pub input: String,
    pub sections: Vec<Section>,
    pub passed: bool,
}

impl Document {
    pub fn new(command: &str, input: &str) -> Document {
        Document {
            command: command.into(),
            input: input.into(),
            sections: Vec::new(),
            passed: true,
        }
    }

    pub fn push(&mut self, s: Section) {
        self.sections.push(s);
    }

    pub fn section(&self, title: &str) -> Option<&Section> {
        self.sections.iter().find(|s| s.title == title)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Table => self.table(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
                s.push('\n');
                s
            }
            Format::Csv => self.csv(),
        }
    }

    fn table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.command, self.input);
        for s in &self.sections {
            let _ = writeln!(out, "\n== {} ==", s.title);
            let cells: Vec<Vec<String>> = s.rows.iter().map(|r| r.iter().map(cell).collect()).collect();
            let mut widths: Vec<usize> = s.columns.iter().map(|c| c.chars().count()).collect();
            for r in &cells {
                for (w, c) in widths.iter_mut().zip(r) {
                    *w = (*w).max(c.chars().count());
                }
            }
            let line = |r: &[String]| {
                let parts: Vec<String> = r
                    .iter()
                    .zip(&widths)
                    .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                    .collect();
                parts.join("  ").trim_end().to_string()
            };
            if !s.columns.is_empty() {
                let _ = writeln!(out, "{}", line(&s.columns));
                for r in &cells {
                    let _ = writeln!(out, "{}", line(r));
                }
            }
            for n in &s.notes {
                let _ = writeln!(out, "{n}");
            }
        }
        let _ = writeln!(out, "\nresult: {}", if self.passed { "pass" } else { "FAIL" });
        out
    }

    /// One record per row, prefixed by the section title; notes become
    /// records with a single cell.
    fn csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
        for s in &self.sections {
            if !s.columns.is_empty() {
                let mut header = vec!["section".to_string()];
                header.extend(s.columns.iter().cloned());
                w.write_record(&header).expect("in-memory csv");
            }
            for r in &s.rows {
                let mut rec = vec![s.title.clone()];
                rec.extend(r.iter().map(cell));
                w.write_record(&rec).expect("in-memory csv");
            }
            for n in &s.notes {
                w.write_record([s.title.as_str(), n.as_str()]).expect("in-memory csv");
            }
        }
        w.write_record(["result", if self.passed { "pass" } else { "FAIL" }])
            .expect("in-memory csv");
        String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8 cells")
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Bool(b) => if *b { "yes" } else { "no" }.into(),
        other => other.to_string(),
    }
}
