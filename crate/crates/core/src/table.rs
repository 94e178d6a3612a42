//! Long-format result tables with CSV and JSON serialization.
//!
//! CSV files open with `# key=value` metadata lines, then a header row and one
//! data row per record. Floats are written with 17 significant digits so that
//! a write/read cycle reproduces every value bit for bit. Missing values are
//! empty CSV fields or JSON `null`.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use serde_json::{json, Map, Value};

use crate::cats::CatDecomposition;
use crate::error::{Error, Result};
use crate::lattice::EvolutionRecord;
use crate::wigner::WignerGrid;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::Config(format!(
                "unknown output format {other:?}, expected csv or json"
            ))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.extension())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Missing,
}

impl Cell {
    pub fn as_f64(&self) -> Option<f64> {
        match *self {
            Cell::Int(i) => Some(i as f64),
            Cell::Float(x) => Some(x),
            Cell::Missing => None,
        }
    }

    fn to_csv(self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Float(x) => format!("{x:.16e}"),
            Cell::Missing => String::new(),
        }
    }

    fn to_json(self) -> Value {
        match self {
            Cell::Int(i) => json!(i),
            Cell::Float(x) if x.is_finite() => json!(x),
            Cell::Float(x) => json!(x.to_string()),
            Cell::Missing => Value::Null,
        }
    }

    fn parse(field: &str) -> std::result::Result<Cell, ()> {
        if field.is_empty() {
            return Ok(Cell::Missing);
        }
        if let Ok(i) = field.parse::<i64>() {
            return Ok(Cell::Int(i));
        }
        field.parse::<f64>().map(Cell::Float).map_err(|_| ())
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<usize> for Cell {
    fn from(i: usize) -> Self {
        Cell::Int(i as i64)
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Missing, Cell::Float)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub meta: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            meta: Vec::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn with_meta(mut self, meta: &[(String, String)]) -> Self {
        self.meta.extend(meta.iter().cloned());
        self
    }

    pub fn push_meta(&mut self, key: &str, value: impl ToString) {
        self.meta.push((key.to_string(), value.to_string()));
    }

    pub fn push_row(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    pub fn meta_value(&self, key: &str) -> Option<&str> {
        self.meta
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// Values of one column; missing cells become NaN.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.column_index(name)?;
        Some(
            self.rows
                .iter()
                .map(|r| r[i].as_f64().unwrap_or(f64::NAN))
                .collect(),
        )
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        for (k, v) in &self.meta {
            writeln!(out, "# {k}={v}").map_err(|e| io_error("<csv>", e))?;
        }
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|c| c.to_csv()))?;
        }
        w.flush().map_err(|e| io_error("<csv>", e))?;
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let meta: Map<String, Value> = self
            .meta
            .iter()
            .map(|(k, v)| (k.clone(), Value::String(v.clone())))
            .collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                Value::Object(
                    self.columns
                        .iter()
                        .zip(r.iter())
                        .map(|(c, v)| (c.clone(), v.to_json()))
                        .collect(),
                )
            })
            .collect();
        json!({ "meta": meta, "columns": self.columns, "rows": rows })
    }

    pub fn write_json<W: Write>(&self, mut out: W) -> Result<()> {
        serde_json::to_writer_pretty(&mut out, &self.to_json())?;
        writeln!(out).map_err(|e| io_error("<json>", e))?;
        Ok(())
    }

    pub fn write_file(&self, path: &Path, format: Format) -> Result<()> {
        if let Some(parent) = path.parent() {
            if !parent.as_os_str().is_empty() {
                fs::create_dir_all(parent).map_err(|e| io_error(parent, e))?;
            }
        }
        let file = fs::File::create(path).map_err(|e| io_error(path, e))?;
        let buf = std::io::BufWriter::new(file);
        match format {
            Format::Csv => self.write_csv(buf),
            Format::Json => self.write_json(buf),
        }
    }

    pub fn parse_csv(text: &str) -> Result<Table> {
        let mut meta = Vec::new();
        let mut body_start = 0;
        for line in text.split_inclusive('\n') {
            let Some(rest) = line.strip_prefix('#') else {
                break;
            };
            body_start += line.len();
            let rest = rest.trim();
            let (k, v) = rest.split_once('=').unwrap_or((rest, ""));
            meta.push((k.to_string(), v.to_string()));
        }
        let mut reader = csv::ReaderBuilder::new().from_reader(text[body_start..].as_bytes());
        let columns: Vec<String> = reader.headers()?.iter().map(str::to_string).collect();
        let mut rows = Vec::new();
        for (line, rec) in reader.records().enumerate() {
            let rec = rec?;
            let row = rec
                .iter()
                .map(|f| {
                    Cell::parse(f).map_err(|_| Error::Parse {
                        position: line + 1,
                        expected: "a number or an empty field".into(),
                        found: f.to_string(),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        Ok(Table {
            meta,
            columns,
            rows,
        })
    }

    pub fn read_csv(path: &Path) -> Result<Table> {
        let text = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
        Self::parse_csv(&text)
    }
}

fn io_error(path: impl AsRef<Path>, source: std::io::Error) -> Error {
    Error::Io {
        path: path.as_ref().to_path_buf(),
        source,
    }
}

pub const EVOLUTION_COLUMNS: [&str; 5] = ["z", "m", "re", "im", "intensity"];
pub const WIGNER_COLUMNS: [&str; 3] = ["x", "y", "w"];
pub const COMPARE_COLUMNS: [&str; 7] = [
    "z",
    "m",
    "analytic_re",
    "analytic_im",
    "numeric_re",
    "numeric_im",
    "abs_diff",
];
pub const COMPONENT_COLUMNS: [&str; 6] = [
    "component",
    "weight_re",
    "weight_im",
    "displacement_re",
    "displacement_im",
    "fock_index",
];

/// One row per `(z_j, m)`.
pub fn evolution_table(record: &EvolutionRecord) -> Table {
    let mut t = Table::new(&EVOLUTION_COLUMNS);
    for (j, z) in record.z_grid.iter().enumerate() {
        for (m, e) in record.fields.row(j).iter().enumerate() {
            t.push_row(vec![
                (*z).into(),
                m.into(),
                e.re.into(),
                e.im.into(),
                e.norm_sqr().into(),
            ]);
        }
    }
    t
}

pub fn wigner_table(grid: &WignerGrid) -> Table {
    let mut t = Table::new(&WIGNER_COLUMNS);
    for (i, x) in grid.x_axis.iter().enumerate() {
        for (j, y) in grid.y_axis.iter().enumerate() {
            t.push_row(vec![(*x).into(), (*y).into(), grid.values[[i, j]].into()]);
        }
    }
    t
}

pub fn components_table(dec: &CatDecomposition) -> Table {
    let mut t = Table::new(&COMPONENT_COLUMNS);
    for (i, c) in dec.components.iter().enumerate() {
        t.push_row(vec![
            i.into(),
            c.weight.re.into(),
            c.weight.im.into(),
            c.displacement.re.into(),
            c.displacement.im.into(),
            c.fock_index.into(),
        ]);
    }
    t
}

/// A row of an evolution table.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AmplitudeRow {
    pub z: f64,
    pub m: usize,
    pub re: f64,
    pub im: f64,
    pub intensity: f64,
}

pub fn amplitude_rows(table: &Table) -> Result<Vec<AmplitudeRow>> {
    let idx = EVOLUTION_COLUMNS
        .iter()
        .map(|c| {
            table
                .column_index(c)
                .ok_or_else(|| Error::Config(format!("table has no column {c:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    table
        .rows
        .iter()
        .enumerate()
        .map(|(line, r)| {
            let get = |i: usize| {
                r[idx[i]].as_f64().ok_or_else(|| Error::Parse {
                    position: line + 1,
                    expected: format!("a value in column {}", EVOLUTION_COLUMNS[i]),
                    found: String::new(),
                })
            };
            Ok(AmplitudeRow {
                z: get(0)?,
                m: get(1)? as usize,
                re: get(2)?,
                im: get(3)?,
                intensity: get(4)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip_is_exact() {
        let mut t = Table::new(&["a", "b", "c"]);
        t.push_meta("command", "simulate");
        t.push_meta("input", "coherent:n=50");
        let tricky = [0.1 + 0.2, std::f64::consts::PI, -1e-300, 5e-324, 1.0 / 3.0];
        for (i, x) in tricky.iter().enumerate() {
            t.push_row(vec![i.into(), (*x).into(), Cell::Missing]);
        }
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("# command=simulate\n# input=coherent:n=50\na,b,c\n"));
        assert!(!text.contains('\r'));
        let back = Table::parse_csv(&text).unwrap();
        assert_eq!(back, t);
        for (x, y) in back.column("b").unwrap().iter().zip(tricky) {
            assert_eq!(x.to_bits(), y.to_bits());
        }
    }

    #[test]
    fn json_mirrors_rows() {
        let mut t = Table::new(&["x", "w"]);
        t.push_meta("state", "fock:1");
        t.push_row(vec![0.5.into(), Cell::Missing]);
        let v = t.to_json();
        assert_eq!(v["meta"]["state"], "fock:1");
        assert_eq!(v["rows"][0]["x"], 0.5);
        assert!(v["rows"][0]["w"].is_null());
    }

    #[test]
    fn format_parsing() {
        assert_eq!("CSV".parse::<Format>().unwrap(), Format::Csv);
        assert_eq!("json".parse::<Format>().unwrap(), Format::Json);
        assert!("xml".parse::<Format>().is_err());
    }

    #[test]
    fn bad_cell_reports_line() {
        let err = Table::parse_csv("a,b\n1,2\n3,x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { position: 2, .. }));
    }
}
