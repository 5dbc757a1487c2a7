//! Result files and CSV helpers.
//!
//! All CSV output is comma-separated with a header row, `.` as decimal
//! separator and LF line endings. Floats use Rust's shortest round-trip
//! formatting, so nothing depends on the locale.

use std::fmt::Write as _;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use tempfile::NamedTempFile;

use super::run::ExperimentResult;
use crate::error::{Error, Result};
use crate::lsd::LawModel;
use crate::ranks::fractional_ranks;

/// Writes `contents` to `path` through a temporary file in the same
/// directory followed by a rename.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

pub fn eigs_csv(eigs: &[f64]) -> String {
    let mut out = String::from("eigenvalue\n");
    for x in eigs {
        let _ = writeln!(out, "{x}");
    }
    out
}

pub fn hist_csv(result: &ExperimentResult) -> String {
    let h = &result.histogram;
    let mut out = String::from("bin_left,bin_right,density\n");
    for (k, d) in h.densities.iter().enumerate() {
        let (l, r) = h.bin_edges(k);
        let _ = writeln!(out, "{l},{r},{d}");
    }
    out
}

fn curve_csv(points: impl IntoIterator<Item = [f64; 2]>) -> String {
    let mut out = String::from("x,density\n");
    for [x, d] in points {
        let _ = writeln!(out, "{x},{d}");
    }
    out
}

/// `points` equally spaced samples of the density of `law` on `[lo, hi]`.
pub fn law_csv(law: &LawModel, lo: f64, hi: f64, points: usize) -> Result<String> {
    if points < 2 || !(lo < hi) {
        return Err(Error::Parameter(format!(
            "need lo < hi and at least 2 points, got [{lo}, {hi}] with {points}"
        )));
    }
    let step = (hi - lo) / (points - 1) as f64;
    Ok(curve_csv((0..points).map(|k| {
        let x = lo + step * k as f64;
        [x, law.density(x)]
    })))
}

/// Writes `result.json`, `eigs.csv`, `hist.csv` and `law.csv` into
/// `out_dir`, creating it if needed. Returns the written paths.
pub fn emit(result: &ExperimentResult, out_dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(out_dir)?;
    let mut json = serde_json::to_string_pretty(result)?;
    json.push('\n');
    let files = [
        ("result.json", json),
        ("eigs.csv", eigs_csv(&result.eigenvalues)),
        ("hist.csv", hist_csv(result)),
        ("law.csv", curve_csv(result.law_curve.iter().copied())),
    ];
    let mut written = Vec::with_capacity(files.len());
    for (name, contents) in files {
        let path = out_dir.join(name);
        write_atomic(&path, contents.as_bytes())?;
        written.push(path);
    }
    Ok(written)
}

/// Reads a single-column eigenvalue CSV with a header row.
pub fn read_eigs_csv<R: Read>(reader: R) -> Result<Vec<f64>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(reader);
    let mut eigs = Vec::new();
    for (line, record) in rdr.records().enumerate() {
        let record = record?;
        let field = record.get(0).unwrap_or("").trim();
        let value: f64 = field.parse().map_err(|_| {
            Error::Config(format!(
                "row {}: cannot parse eigenvalue `{field}`",
                line + 1
            ))
        })?;
        eigs.push(value);
    }
    Ok(eigs)
}

/// Replaces every numeric column of a CSV table by its fractional ranks.
pub fn rank_columns_csv<R: Read>(reader: R) -> Result<String> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(reader);
    let headers = rdr.headers()?.clone();
    let width = headers.len();
    let mut columns: Vec<Vec<f64>> = vec![Vec::new(); width];
    for (line, record) in rdr.records().enumerate() {
        let record = record?;
        for (c, field) in record.iter().enumerate() {
            let value: f64 = field.trim().parse().map_err(|_| {
                Error::Config(format!(
                    "row {}, column {}: not a number `{field}`",
                    line + 1,
                    c + 1
                ))
            })?;
            if !value.is_finite() {
                return Err(Error::NonFinite(format!(
                    "row {}, column {}",
                    line + 1,
                    c + 1
                )));
            }
            columns[c].push(value);
        }
    }
    let ranks: Vec<Vec<f64>> = columns.iter().map(|col| fractional_ranks(col)).collect();
    let mut out = String::new();
    out.push_str(&headers.iter().collect::<Vec<_>>().join(","));
    out.push('\n');
    let rows = ranks.first().map_or(0, Vec::len);
    for r in 0..rows {
        let line: Vec<String> = ranks.iter().map(|col| col[r].to_string()).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    Ok(out)
}
