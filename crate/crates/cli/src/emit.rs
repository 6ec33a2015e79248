//! CSV/JSON emission with metadata.
//!
//! CSV: `#`-prefixed metadata comment lines, the canonical header row, then
//! one record per row with every numeric value in scientific notation at 9
//! significant digits. JSON: an object with a `meta` block and a `rows`
//! array keyed identically to the CSV columns. Identical inputs produce
//! byte-identical output (the tool version line aside).

use serde::{Deserialize, Serialize};
use std::io::Write;
use std::path::Path;
use thiserror::Error;

use crate::sweep::{SweepRow, COLUMNS};

#[derive(Debug, Error)]
pub enum EmitError {
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmitFormat {
    Csv,
    Json,
}

impl std::str::FromStr for EmitFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(format!("unknown format {other:?}; expected csv or json")),
        }
    }
}

/// Metadata block preceding the data.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct EmitMeta {
    pub tool_version: String,
    pub q_convention: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleMeta>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct OracleMeta {
    pub cutoff: usize,
    pub grid_points: usize,
    pub thermal_levels: usize,
    pub tolerance: f64,
}

impl EmitMeta {
    pub fn new(q_convention: impl std::fmt::Display) -> Self {
        Self {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            q_convention: q_convention.to_string(),
            oracle: None,
        }
    }

    pub fn with_oracle(mut self, oracle: OracleMeta) -> Self {
        self.oracle = Some(oracle);
        self
    }
}

/// Scientific notation with 9 significant digits.
fn sci(x: f64) -> String {
    format!("{x:.8e}")
}

pub fn write_csv<W: Write>(w: &mut W, rows: &[SweepRow], meta: &EmitMeta) -> std::io::Result<()> {
    writeln!(w, "# tool_version = {}", meta.tool_version)?;
    writeln!(w, "# q_convention = {}", meta.q_convention)?;
    if let Some(oracle) = &meta.oracle {
        writeln!(
            w,
            "# oracle = cutoff {} grid {} thermal_levels {} tolerance {}",
            oracle.cutoff,
            oracle.grid_points,
            oracle.thermal_levels,
            sci(oracle.tolerance)
        )?;
    }
    writeln!(w, "{}", COLUMNS.join(","))?;
    for row in rows {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{},{}",
            row.scenario_id,
            sci(row.acceleration),
            sci(row.unruh_temperature),
            sci(row.q),
            sci(row.g),
            sci(row.gamma_inertial),
            sci(row.gamma_accelerated),
            sci(row.delta_per_cycle),
            sci(row.visibility),
            sci(row.cycles_to_pi),
            sci(row.time_to_pi),
        )?;
    }
    Ok(())
}

#[derive(Serialize)]
struct JsonDocument<'a> {
    meta: &'a EmitMeta,
    rows: &'a [SweepRow],
}

#[derive(Deserialize)]
struct JsonDocumentOwned {
    #[allow(dead_code)]
    meta: serde_json::Value,
    rows: Vec<SweepRow>,
}

pub fn write_json<W: Write>(w: &mut W, rows: &[SweepRow], meta: &EmitMeta) -> std::io::Result<()> {
    let doc = JsonDocument { meta, rows };
    serde_json::to_writer_pretty(&mut *w, &doc)?;
    writeln!(w)?;
    Ok(())
}

/// Parse the `rows` of an emitted JSON document (round-trip support).
pub fn parse_json_rows(bytes: &[u8]) -> Result<Vec<SweepRow>, serde_json::Error> {
    let doc: JsonDocumentOwned = serde_json::from_slice(bytes)?;
    Ok(doc.rows)
}

/// Emit rows to `path`, or to stdout when `path` is `None`.
pub fn emit(
    rows: &[SweepRow],
    format: EmitFormat,
    path: Option<&Path>,
    meta: &EmitMeta,
) -> Result<(), EmitError> {
    let mut buffer: Vec<u8> = Vec::new();
    let io_err = |e: std::io::Error, path: &str| EmitError::Io {
        path: path.to_string(),
        source: e,
    };
    match format {
        EmitFormat::Csv => write_csv(&mut buffer, rows, meta),
        EmitFormat::Json => write_json(&mut buffer, rows, meta),
    }
    .map_err(|e| io_err(e, "<buffer>"))?;
    match path {
        Some(p) => {
            std::fs::write(p, &buffer).map_err(|e| io_err(e, &p.display().to_string()))
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(&buffer).map_err(|e| io_err(e, "<stdout>"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_rows() -> Vec<SweepRow> {
        vec![SweepRow {
            scenario_id: "t".into(),
            acceleration: 4.5e17,
            unruh_temperature: 1.8247560852353534e-3,
            q: 0.01520745569923093,
            g: 0.5,
            gamma_inertial: 2.45e-14,
            gamma_accelerated: 2.45e-14,
            delta_per_cycle: 5.7e-18,
            visibility: 0.99988,
            cycles_to_pi: 3.0e4,
            time_to_pi: 9.42e-5,
        }]
    }

    #[test]
    fn csv_header_and_metadata_layout() {
        let mut out = Vec::new();
        write_csv(&mut out, &sample_rows(), &EmitMeta::new("arctan")).unwrap();
        let text = String::from_utf8(out).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert!(lines[0].starts_with("# tool_version = "));
        assert_eq!(lines[1], "# q_convention = arctan");
        assert_eq!(
            lines[2],
            "scenario_id,acceleration,unruh_temperature,q,G,gamma_inertial,\
             gamma_accelerated,delta_per_cycle,visibility,cycles_to_pi,time_to_pi"
        );
        assert!(lines[3].starts_with("t,4.50000000e17,"));
    }

    #[test]
    fn empty_rows_give_header_only() {
        let mut out = Vec::new();
        write_csv(&mut out, &[], &EmitMeta::new("arctan")).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert_eq!(text.lines().count(), 3); // two meta lines + header
    }

    #[test]
    fn json_round_trip_is_bit_identical() {
        let rows = sample_rows();
        let mut out = Vec::new();
        write_json(&mut out, &rows, &EmitMeta::new("arctan")).unwrap();
        let parsed = parse_json_rows(&out).unwrap();
        assert_eq!(parsed.len(), rows.len());
        for (a, b) in rows.iter().zip(parsed.iter()) {
            assert_eq!(a, b); // f64 round-trips exactly through serde_json
        }
    }

    #[test]
    fn emission_is_deterministic() {
        let rows = sample_rows();
        let meta = EmitMeta::new("arctan");
        let mut first = Vec::new();
        let mut second = Vec::new();
        write_csv(&mut first, &rows, &meta).unwrap();
        write_csv(&mut second, &rows, &meta).unwrap();
        assert_eq!(first, second);
    }
}
