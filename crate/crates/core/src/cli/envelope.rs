use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

use super::config::{Format, RunConfig};
use crate::error::{Error, Result};

/// Bumped whenever the layout of an envelope changes.
pub const SCHEMA_VERSION: u32 = 1;

/// JSON Schema of the envelope as written with `--format json`.
pub const ENVELOPE_SCHEMA: &str = include_str!("envelope.schema.json");

/// One table cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Bool(bool),
    Text(String),
    Empty,
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<i64> for Cell {
    fn from(x: i64) -> Self {
        Cell::Int(x)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<bool> for Cell {
    fn from(x: bool) -> Self {
        Cell::Bool(x)
    }
}

impl From<&str> for Cell {
    fn from(x: &str) -> Self {
        Cell::Text(x.to_string())
    }
}

impl From<String> for Cell {
    fn from(x: String) -> Self {
        Cell::Text(x)
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Empty, Cell::Float)
    }
}

/// Format a float with `digits` significant digits.
pub fn format_float(x: f64, digits: usize) -> String {
    if x.is_nan() {
        "NaN".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{:.*e}", digits.saturating_sub(1), x)
    }
}

impl Cell {
    pub fn render(&self, digits: usize) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Float(x) => format_float(*x, digits),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Units {
    pub system: String,
    pub length: String,
    pub time: String,
    pub velocity: String,
    pub mass: String,
    pub angle: String,
}

impl Default for Units {
    fn default() -> Self {
        Units {
            system: "natural units, c = hbar = 1".into(),
            length: "1/m_eff; field-map coordinates in units of a0 = 1/(m_eff alpha)".into(),
            time: "1/m_eff (lab time)".into(),
            velocity: "c".into(),
            mass: "m_eff".into(),
            angle: "rad".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
}

/// A command's result: one table plus metadata.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Payload {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub metadata: BTreeMap<String, serde_json::Value>,
    pub warnings: Vec<String>,
}

impl Payload {
    pub fn new(columns: &[&str]) -> Self {
        Payload {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            metadata: BTreeMap::new(),
            warnings: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn meta(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).unwrap_or(serde_json::Value::Null);
        self.metadata.insert(key.to_string(), v);
    }

    /// Index of a column by name.
    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultEnvelope {
    pub schema_version: u32,
    pub command: String,
    pub units: Units,
    pub input: RunConfig,
    pub payload: Payload,
    pub provenance: Provenance,
}

impl ResultEnvelope {
    pub fn new(command: &str, input: &RunConfig, payload: Payload) -> Self {
        let timestamp = input
            .output
            .timestamp
            .then(|| humantime::format_rfc3339_seconds(std::time::SystemTime::now()).to_string());
        ResultEnvelope {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            units: Units::default(),
            input: input.clone(),
            payload,
            provenance: Provenance {
                tool: env!("CARGO_PKG_NAME").into(),
                version: env!("CARGO_PKG_VERSION").into(),
                timestamp,
            },
        }
    }

    /// CSV with `#`-prefixed metadata lines, then a header row and the data.
    pub fn write_csv(&self, w: &mut dyn Write) -> Result<()> {
        let digits = self.input.output.precision;
        writeln!(w, "# schema_version: {}", self.schema_version)?;
        writeln!(w, "# command: {}", self.command)?;
        writeln!(w, "# units: {}", json_line(&self.units))?;
        writeln!(w, "# input: {}", json_line(&self.input))?;
        writeln!(w, "# provenance: {}", json_line(&self.provenance))?;
        for (k, v) in &self.payload.metadata {
            writeln!(w, "# meta.{k}: {v}")?;
        }
        for warning in &self.payload.warnings {
            writeln!(w, "# warning: {warning}")?;
        }
        let mut out = csv::WriterBuilder::new().from_writer(w);
        let csv_err = |e: csv::Error| Error::Io(std::io::Error::other(e));
        out.write_record(&self.payload.columns).map_err(csv_err)?;
        for row in &self.payload.rows {
            out.write_record(row.iter().map(|c| c.render(digits)))
                .map_err(csv_err)?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn write_json(&self, w: &mut dyn Write) -> Result<()> {
        serde_json::to_writer_pretty(&mut *w, self).map_err(|e| Error::Io(std::io::Error::other(e)))?;
        writeln!(w)?;
        Ok(())
    }

    pub fn write(&self, format: Format, w: &mut dyn Write) -> Result<()> {
        match format {
            Format::Csv => self.write_csv(w),
            Format::Json => self.write_json(w),
        }
    }

    pub fn to_string(&self, format: Format) -> Result<String> {
        let mut buf = Vec::new();
        self.write(format, &mut buf)?;
        Ok(String::from_utf8(buf).expect("output is UTF-8"))
    }
}

fn json_line<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).unwrap_or_else(|_| "null".into())
}

/// A CSV file read back: metadata lines, header and string cells.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedCsv {
    pub metadata: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl ParsedCsv {
    /// A column parsed as floats (empty cells become NaN).
    pub fn float_column(&self, name: &str) -> Result<Vec<f64>> {
        let i = self
            .columns
            .iter()
            .position(|c| c == name)
            .ok_or_else(|| Error::Usage(format!("no column `{name}`")))?;
        self.rows
            .iter()
            .map(|r| {
                let s = r[i].as_str();
                if s.is_empty() {
                    return Ok(f64::NAN);
                }
                s.parse::<f64>()
                    .map_err(|e| Error::Usage(format!("column `{name}`: cannot parse `{s}`: {e}")))
            })
            .collect()
    }

    pub fn meta(&self, key: &str) -> Option<&str> {
        self.metadata.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

/// Parse output written by [`ResultEnvelope::write_csv`].
pub fn parse_csv(text: &str) -> Result<ParsedCsv> {
    let mut metadata = Vec::new();
    let mut body = String::new();
    for line in text.lines() {
        if let Some(m) = line.strip_prefix("# ") {
            if let Some((k, v)) = m.split_once(": ") {
                metadata.push((k.to_string(), v.to_string()));
            }
        } else {
            body.push_str(line);
            body.push('\n');
        }
    }
    let csv_err = |e: csv::Error| Error::Usage(format!("malformed CSV: {e}"));
    let mut rd = csv::ReaderBuilder::new().from_reader(body.as_bytes());
    let columns = rd.headers().map_err(csv_err)?.iter().map(String::from).collect();
    let rows = rd
        .records()
        .map(|r| r.map(|r| r.iter().map(String::from).collect()))
        .collect::<std::result::Result<_, _>>()
        .map_err(csv_err)?;
    Ok(ParsedCsv {
        metadata,
        columns,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits_round_trip() {
        for x in [0.1, 1.0 / 3.0, 136.99635058365844, 1e-300, -2.5e17] {
            let s = format_float(x, 17);
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
        }
    }

    #[test]
    fn csv_round_trip() {
        let mut cfg = RunConfig::default();
        cfg.output.timestamp = false;
        let mut p = Payload::new(&["a", "label", "flag"]);
        p.push(vec![Cell::Float(0.1 + 0.2), "x, \"quoted\"".into(), true.into()]);
        p.push(vec![Cell::Float(-1e-17), Cell::Empty, false.into()]);
        p.meta("note", "value");
        let env = ResultEnvelope::new("test", &cfg, p);
        let text = env.to_string(Format::Csv).unwrap();
        let parsed = parse_csv(&text).unwrap();
        assert_eq!(parsed.float_column("a").unwrap(), vec![0.1 + 0.2, -1e-17]);
        assert_eq!(parsed.rows[0][1], "x, \"quoted\"");
        assert_eq!(parsed.meta("meta.note"), Some("\"value\""));
        assert_eq!(parsed.meta("command"), Some("test"));
    }
}
