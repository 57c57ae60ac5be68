//! Row tables and their JSON / CSV renderings.
//!
//! Floats are written with 17 significant digits (`{:.16e}`), which
//! round-trips every `f64`; non-finite values become `null` in JSON and an
//! empty field in CSV. Keys keep column order, so output is byte-stable.

use std::fmt::Write as _;

use zonal::Complex64;

use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Bool(bool),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}
impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}
impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}
impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}
impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}
impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Self {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Meta {
    pub space: Option<(u32, u32)>,
    pub lambda: Option<Complex64>,
    pub units: String,
    pub seed: u64,
}

pub fn format_float(x: f64) -> Option<String> {
    if x.is_finite() {
        Some(format!("{x:.16e}"))
    } else {
        None
    }
}

fn json_string(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

fn json_cell(c: &Cell) -> String {
    match c {
        Cell::Num(x) => format_float(*x).unwrap_or_else(|| "null".into()),
        Cell::Int(i) => i.to_string(),
        Cell::Text(s) => json_string(s),
        Cell::Bool(b) => b.to_string(),
    }
}

pub fn render_json(meta: &Meta, table: &Table) -> String {
    let mut out = String::new();
    out.push_str("{\"meta\":{");
    let _ = write!(out, "\"version\":{}", json_string(env!("CARGO_PKG_VERSION")));
    match meta.space {
        Some((p, q)) => {
            let _ = write!(out, ",\"space\":[{p},{q}]");
        }
        None => out.push_str(",\"space\":null"),
    }
    match meta.lambda {
        Some(l) => {
            let _ = write!(
                out,
                ",\"lambda\":{{\"re\":{},\"im\":{}}}",
                json_cell(&Cell::Num(l.re)),
                json_cell(&Cell::Num(l.im))
            );
        }
        None => out.push_str(",\"lambda\":null"),
    }
    let _ = write!(out, ",\"units\":{},\"seed\":{}}},\"rows\":[", json_string(&meta.units), meta.seed);
    for (i, row) in table.rows.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push('{');
        for (j, (col, cell)) in table.columns.iter().zip(row).enumerate() {
            if j > 0 {
                out.push(',');
            }
            let _ = write!(out, "{}:{}", json_string(col), json_cell(cell));
        }
        out.push('}');
    }
    out.push_str("]}\n");
    out
}

pub fn render_csv(table: &Table) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Numeric(format!("csv: {e}"));
    w.write_record(&table.columns).map_err(io)?;
    for row in &table.rows {
        let fields: Vec<String> = row
            .iter()
            .map(|c| match c {
                Cell::Num(x) => format_float(*x).unwrap_or_default(),
                Cell::Int(i) => i.to_string(),
                Cell::Text(s) => s.clone(),
                Cell::Bool(b) => b.to_string(),
            })
            .collect();
        w.write_record(&fields).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Numeric(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| CliError::Numeric(format!("csv: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_layout_is_fixed() {
        let mut t = Table::new(&["t", "value", "method"]);
        t.push(vec![0.5.into(), f64::NAN.into(), "bochner".into()]);
        let meta = Meta {
            space: Some((1, 0)),
            lambda: Some(Complex64::new(0.0, 1.0)),
            units: "rho".into(),
            seed: 7,
        };
        let s = render_json(&meta, &t);
        assert!(s.starts_with("{\"meta\":{\"version\":"));
        assert!(s.contains("\"rows\":[{\"t\":5.0000000000000000e-1,\"value\":null,\"method\":\"bochner\"}]"));
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["meta"]["seed"], 7);
        assert_eq!(v["meta"]["lambda"]["im"], 1.0);
    }

    #[test]
    fn floats_round_trip() {
        for x in [0.1, 1.0 / 3.0, -2.5e-300, 6.02e23] {
            let s = format_float(x).unwrap();
            assert_eq!(s.parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn csv_has_header() {
        let mut t = Table::new(&["a", "b"]);
        t.push(vec![1.0.into(), true.into()]);
        let s = render_csv(&t).unwrap();
        assert_eq!(s, "a,b\n1.0000000000000000e0,true\n");
    }
}
