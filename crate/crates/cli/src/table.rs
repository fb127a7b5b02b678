//! Row-oriented machine output. CSV and JSON are rendered from the same cells,
//! and floats always carry 17 significant digits.

use std::io::Write;

use crate::cli::Format;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(Option<f64>),
    Int(i64),
    Bool(bool),
    Text(Option<String>),
}

pub struct Row {
    pub cells: Vec<(&'static str, Cell)>,
}

impl Row {
    pub fn new() -> Self {
        Self { cells: Vec::new() }
    }

    pub fn push(mut self, name: &'static str, cell: Cell) -> Self {
        self.cells.push((name, cell));
        self
    }

    pub fn float(self, name: &'static str, v: f64) -> Self {
        self.push(name, Cell::Float(Some(v)))
    }

    pub fn text(self, name: &'static str, v: impl Into<String>) -> Self {
        self.push(name, Cell::Text(Some(v.into())))
    }
}

pub fn float17(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        v.to_string()
    }
}

fn csv_field(cell: &Cell) -> String {
    match cell {
        Cell::Float(Some(v)) => float17(*v),
        Cell::Float(None) | Cell::Text(None) => String::new(),
        Cell::Int(v) => v.to_string(),
        Cell::Bool(v) => v.to_string(),
        Cell::Text(Some(s)) => s.clone(),
    }
}

fn json_value(cell: &Cell) -> String {
    match cell {
        Cell::Float(Some(v)) if v.is_finite() => float17(*v),
        Cell::Float(_) | Cell::Text(None) => "null".into(),
        Cell::Int(v) => v.to_string(),
        Cell::Bool(v) => v.to_string(),
        Cell::Text(Some(s)) => serde_json::to_string(s).expect("strings always serialize"),
    }
}

fn json_object(row: &Row, skip_null_text: bool) -> String {
    let fields: Vec<String> = row
        .cells
        .iter()
        .filter(|(_, c)| !(skip_null_text && matches!(c, Cell::Text(None))))
        .map(|(k, c)| format!("\"{k}\": {}", json_value(c)))
        .collect();
    format!("{{{}}}", fields.join(", "))
}

/// Write `rows` under `header`. CSV emits exactly the header columns; JSON
/// additionally carries any `Text` cells named outside the header when set.
pub fn write_rows(out: &mut dyn Write, format: Format, header: &[&str], rows: &[Row], single: bool) -> std::io::Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(header)?;
            for row in rows {
                let record: Vec<String> = header
                    .iter()
                    .map(|h| {
                        row.cells
                            .iter()
                            .find(|(k, _)| k == h)
                            .map(|(_, c)| csv_field(c))
                            .unwrap_or_default()
                    })
                    .collect();
                w.write_record(&record)?;
            }
            w.flush()
        }
        Format::Json => {
            if single && rows.len() == 1 {
                writeln!(out, "{}", json_object(&rows[0], true))
            } else {
                writeln!(out, "[")?;
                for (i, row) in rows.iter().enumerate() {
                    let sep = if i + 1 == rows.len() { "" } else { "," };
                    writeln!(out, "  {}{sep}", json_object(row, true))?;
                }
                writeln!(out, "]")
            }
        }
    }
}
