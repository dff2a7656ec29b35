//! Trajectory files.
//!
//! CSV uses the fixed header `t,x_c,y_c,theta,energy` for unicycle runs
//! (`t,q0,..,q{n-1},energy` otherwise) and prints every number with 17
//! significant digits, so identical runs produce identical files. The JSON
//! form carries the same rows plus a metadata block.

use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::driftless::StateVector;
use crate::error::{Error, Result};
use crate::simulate::Trajectory;

pub const TOOL_NAME: &str = "driftless-pk";
pub const UNICYCLE_COLUMNS: [&str; 5] = ["t", "x_c", "y_c", "theta", "energy"];

/// Column names for a state of dimension `n`.
pub fn column_names(n: usize) -> Vec<String> {
    if n == 3 {
        UNICYCLE_COLUMNS.iter().map(|s| s.to_string()).collect()
    } else {
        std::iter::once("t".to_string())
            .chain((0..n).map(|i| format!("q{i}")))
            .chain(std::iter::once("energy".to_string()))
            .collect()
    }
}

/// 17 significant digits in scientific notation.
pub fn format_value(v: f64) -> String {
    format!("{v:.16e}")
}

fn state_dim(traj: &Trajectory) -> Result<usize> {
    let n = traj.states.first().map_or(3, |q| q.len());
    if traj.states.iter().any(|q| q.len() != n) {
        return Err(Error::argument(
            "trajectory",
            "states have different dimensions",
        ));
    }
    if traj.times.len() != traj.states.len() || traj.energy.len() != traj.states.len() {
        return Err(Error::argument("trajectory", "column lengths differ"));
    }
    Ok(n)
}

pub fn write_csv<W: Write>(traj: &Trajectory, out: W) -> Result<()> {
    let n = state_dim(traj)?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(column_names(n))?;
    let mut record = Vec::with_capacity(n + 2);
    for ((t, q), e) in traj.times.iter().zip(&traj.states).zip(&traj.energy) {
        record.clear();
        record.push(format_value(*t));
        record.extend(q.iter().map(|v| format_value(*v)));
        record.push(format_value(*e));
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}

pub fn to_csv_string(traj: &Trajectory) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(traj, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv output is ASCII"))
}

/// Reads a file written by [`write_csv`]. The header must start with `t` and
/// end with `energy`; everything between is the state.
pub fn read_csv<R: Read>(input: R) -> Result<Trajectory> {
    let mut r = csv::Reader::from_reader(input);
    let header = r.headers()?.clone();
    let width = header.len();
    if width < 3 || &header[0] != "t" || &header[width - 1] != "energy" {
        return Err(Error::Parse(format!(
            "expected header `t,...,energy`, got `{}`",
            header.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut traj = Trajectory::default();
    for (line, record) in r.records().enumerate() {
        let record = record?;
        let mut values = Vec::with_capacity(width);
        for (col, field) in record.iter().enumerate() {
            let v: f64 = field.trim().parse().map_err(|_| {
                Error::Parse(format!(
                    "row {}: column `{}` is not a number: `{field}`",
                    line + 1,
                    &header[col]
                ))
            })?;
            values.push(v);
        }
        let state = StateVector::new(values[1..width - 1].to_vec())
            .map_err(|e| Error::Parse(format!("row {}: {e}", line + 1)))?;
        traj.times.push(values[0]);
        traj.states.push(state);
        traj.energy.push(values[width - 1]);
    }
    Ok(traj)
}

/// Descriptive block stored next to the rows of a JSON trajectory.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub tool: String,
    pub version: String,
    /// Echo of the configuration that produced the file.
    pub config: serde_json::Value,
    /// `complete`, or the reason the run stopped early.
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub switch_time: Option<f64>,
}

impl Metadata {
    pub fn new(config: serde_json::Value) -> Self {
        Metadata {
            tool: TOOL_NAME.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            status: "complete".to_string(),
            switch_time: None,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct Document {
    metadata: Metadata,
    columns: Vec<String>,
    rows: Vec<Vec<f64>>,
}

pub fn to_json_string(traj: &Trajectory, metadata: &Metadata) -> Result<String> {
    let n = state_dim(traj)?;
    let rows = traj
        .times
        .iter()
        .zip(&traj.states)
        .zip(&traj.energy)
        .map(|((t, q), e)| {
            let mut row = Vec::with_capacity(n + 2);
            row.push(*t);
            row.extend_from_slice(q);
            row.push(*e);
            row
        })
        .collect();
    let doc = Document {
        metadata: metadata.clone(),
        columns: column_names(n),
        rows,
    };
    let mut s = serde_json::to_string_pretty(&doc)?;
    s.push('\n');
    Ok(s)
}

pub fn from_json_str(s: &str) -> Result<(Trajectory, Metadata)> {
    let doc: Document = serde_json::from_str(s)?;
    let width = doc.columns.len();
    if width < 3 {
        return Err(Error::Parse(format!(
            "expected at least 3 columns, got {width}"
        )));
    }
    let mut traj = Trajectory::default();
    for (i, row) in doc.rows.into_iter().enumerate() {
        if row.len() != width {
            return Err(Error::Parse(format!(
                "row {}: expected {width} values, got {}",
                i + 1,
                row.len()
            )));
        }
        let state = StateVector::new(row[1..width - 1].to_vec())
            .map_err(|e| Error::Parse(format!("row {}: {e}", i + 1)))?;
        traj.times.push(row[0]);
        traj.states.push(state);
        traj.energy.push(row[width - 1]);
    }
    Ok((traj, doc.metadata))
}

/// Writes `contents` to a temporary file next to `path` and renames it into
/// place, so readers never observe a half-written file.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}
