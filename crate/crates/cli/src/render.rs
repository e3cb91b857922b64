use std::fmt::Write as _;

use clap::ValueEnum;
use serde_json::Value;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Csv,
    Json,
}

/// Rendered output of one command, before it is written out.
pub enum Rendered {
    /// Header, rows, then free-form notes printed under a table.
    Rows { header: Vec<String>, rows: Vec<Vec<String>>, notes: Vec<String> },
    Json(Value),
    /// Row-shaped text for table and CSV, with a structured value for JSON.
    Both(Box<Rendered>, Value),
}

impl Rendered {
    pub fn rows<H: ToString>(header: &[H], rows: Vec<Vec<String>>) -> Self {
        Rendered::Rows { header: header.iter().map(|h| h.to_string()).collect(), rows, notes: Vec::new() }
    }

    pub fn with_notes(self, extra: Vec<String>) -> Self {
        match self {
            Rendered::Rows { header, rows, mut notes } => {
                notes.extend(extra);
                Rendered::Rows { header, rows, notes }
            }
            other => other,
        }
    }
}

pub fn table(header: &[String], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let line = |out: &mut String, cells: &[String]| {
        let parts: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{}{c}", " ".repeat(w - c.chars().count())))
            .collect();
        writeln!(out, "{}", parts.join("  ").trim_end()).unwrap();
    };
    line(&mut out, header);
    let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
    writeln!(out, "{}", rule.join("  ")).unwrap();
    for row in rows {
        line(&mut out, row);
    }
    out
}

pub fn csv(header: &[String], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).unwrap();
    for row in rows {
        w.write_record(row).unwrap();
    }
    String::from_utf8(w.into_inner().unwrap()).unwrap()
}

/// Final text for `format`; `meta` lines become `#` comments or a JSON envelope.
pub fn finish(rendered: Rendered, format: Format, meta: Option<Vec<(String, String)>>) -> String {
    let rendered = match (rendered, format) {
        (Rendered::Both(_, json), Format::Json) => Rendered::Json(json),
        (Rendered::Both(inner, _), _) => *inner,
        (other, _) => other,
    };
    let mut out = String::new();
    match (&rendered, format) {
        (Rendered::Json(_), _) | (_, Format::Json) => {}
        _ => {
            for (k, v) in meta.iter().flatten() {
                writeln!(out, "# {k}: {v}").unwrap();
            }
        }
    }
    match rendered {
        Rendered::Rows { header, rows, notes } => match format {
            Format::Table => {
                out.push_str(&table(&header, &rows));
                for note in notes {
                    writeln!(out, "{note}").unwrap();
                }
            }
            Format::Csv => out.push_str(&csv(&header, &rows)),
            Format::Json => {
                let objects: Vec<Value> = rows
                    .iter()
                    .map(|r| Value::Object(header.iter().cloned().zip(r.iter().map(|c| Value::String(c.clone()))).collect()))
                    .collect();
                out.push_str(&json_text(Value::Array(objects), meta));
            }
        },
        Rendered::Json(v) => out.push_str(&json_text(v, meta)),
        Rendered::Both(..) => unreachable!("unwrapped above"),
    }
    out
}

fn json_text(v: Value, meta: Option<Vec<(String, String)>>) -> String {
    let v = match meta {
        Some(m) => serde_json::json!({
            "meta": Value::Object(m.into_iter().map(|(k, v)| (k, Value::String(v))).collect()),
            "data": v,
        }),
        None => v,
    };
    let mut s = serde_json::to_string_pretty(&v).unwrap();
    s.push('\n');
    s
}
