//! File formats: dataset CSV, sweep records CSV, benchmark timings CSV,
//! and the JSON run manifest.
//!
//! All CSV output uses LF line endings, a header row, and shortest
//! round-trip decimal formatting for floats (Rust's `Display` for `f64`),
//! so identical values always serialize to identical bytes.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use equit_core::Dataset;
use serde::Serialize;

use crate::sweep::TrialRecord;
use crate::AppError;

/// Reads a two-column numeric CSV into a dataset.
///
/// Accepts LF or CRLF line endings and an optional single header row
/// (detected by the first line failing to parse as two numbers). Every
/// other malformed line is an error carrying its 1-based line number.
pub fn read_dataset_csv(path: &Path) -> Result<Dataset, AppError> {
    let text = fs::read_to_string(path)
        .map_err(|e| AppError::Io(format!("cannot read {}: {e}", path.display())))?;
    let mut points: Vec<(f64, f64)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        match parse_point(line) {
            Some(p) => points.push(p),
            None if idx == 0 => {} // header row
            None => {
                return Err(AppError::Parse(format!(
                    "{}:{}: expected two comma-separated numbers, got {line:?}",
                    path.display(),
                    idx + 1
                )))
            }
        }
    }
    if points.len() < 2 {
        return Err(AppError::Parse(format!(
            "{}: needs at least two data rows, found {}",
            path.display(),
            points.len()
        )));
    }
    Dataset::new(points)
        .map_err(|e| AppError::Parse(format!("{}: invalid dataset: {e}", path.display())))
}

fn parse_point(line: &str) -> Option<(f64, f64)> {
    let mut fields = line.split(',');
    let x: f64 = fields.next()?.trim().parse().ok()?;
    let y: f64 = fields.next()?.trim().parse().ok()?;
    if fields.next().is_some() {
        return None;
    }
    Some((x, y))
}

/// Serializes a dataset as two-column CSV with an `x,y` header.
pub fn dataset_csv(data: &Dataset) -> String {
    let mut out = String::from("x,y\n");
    for &(x, y) in data.points() {
        let _ = writeln!(out, "{x},{y}");
    }
    out
}

/// Column order of the sweep records CSV.
pub const RECORD_HEADER: &str =
    "statistic,function,model,n,level,width,replicate,seed,score,r_squared,elapsed_ms,flag";

/// Serializes sweep records in their canonical order.
pub fn records_csv(records: &[TrialRecord]) -> String {
    let mut out = String::from(RECORD_HEADER);
    out.push('\n');
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            r.statistic,
            r.function,
            r.model,
            r.n,
            r.level,
            r.width,
            r.replicate,
            r.seed,
            r.score,
            r.r_squared,
            r.elapsed_ms,
            r.flag
        );
    }
    out
}

/// One benchmark timing row.
#[derive(Clone, Debug)]
pub struct TimingRow {
    pub n: usize,
    pub function: &'static str,
    pub alpha: f64,
    pub c: f64,
    pub mean_ms: f64,
    pub runs: usize,
}

/// Serializes benchmark timings.
pub fn timings_csv(rows: &[TimingRow]) -> String {
    let mut out = String::from("n,function,alpha,c,mean_ms,runs\n");
    for r in rows {
        let _ =
            writeln!(out, "{},{},{},{},{},{}", r.n, r.function, r.alpha, r.c, r.mean_ms, r.runs);
    }
    out
}

/// Provenance sidecar written next to every sweep or benchmark output.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    /// Tool version (crate version at build time).
    pub version: &'static str,
    /// Subcommand that produced the output.
    pub command: String,
    /// Fully resolved configuration after flag/config-file merging, as
    /// flat key-value pairs.
    pub config: serde_json::Map<String, serde_json::Value>,
    /// Base seed all per-trial seeds derive from.
    pub base_seed: u64,
    /// Worker threads used by the run.
    pub threads: usize,
    /// Unix timestamps (seconds) bracketing the run.
    pub started_at: u64,
    pub finished_at: u64,
}

/// Current time as Unix seconds.
pub fn unix_now() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
}

/// Manifest path for a given output path: `records.csv` ->
/// `records.manifest.json`.
pub fn manifest_path(out: &Path) -> PathBuf {
    out.with_extension("manifest.json")
}

/// Writes the manifest next to `out`.
pub fn write_manifest(out: &Path, manifest: &RunManifest) -> Result<(), AppError> {
    let path = manifest_path(out);
    let body = serde_json::to_string_pretty(manifest)
        .map_err(|e| AppError::Io(format!("cannot serialize manifest: {e}")))?;
    fs::write(&path, body + "\n")
        .map_err(|e| AppError::Io(format!("cannot write {}: {e}", path.display())))
}

/// Writes a file, mapping errors to the I/O exit class.
pub fn write_text(path: &Path, body: &str) -> Result<(), AppError> {
    fs::write(path, body).map_err(|e| AppError::Io(format!("cannot write {}: {e}", path.display())))
}
