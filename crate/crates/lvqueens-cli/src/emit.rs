//! Campaign file formats: raw trial CSVs, histogram CSVs, the summary
//! table (CSV and JSON), and the manifest.
//!
//! All writers are deterministic: given equal inputs they produce equal
//! bytes. Floats are written with Rust's shortest round-trip formatting, so
//! values survive a parse-and-reformat cycle unchanged.

use std::fmt::Display;
use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use thiserror::Error;

use lvqueens_core::stats::Histogram;

use crate::harness::{Manifest, SummaryRow, TrialRecord};

/// Errors from reading or writing campaign files.
#[derive(Debug, Error)]
pub enum EmitError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("refusing to overwrite {}; re-run with --force to replace it", path.display())]
    RefusingOverwrite { path: PathBuf },
    #[error("{}:{line}: {reason}", path.display())]
    Malformed {
        path: PathBuf,
        line: usize,
        reason: String,
    },
}

impl EmitError {
    pub(crate) fn io(path: &Path, source: io::Error) -> Self {
        EmitError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    /// Exit code class: filesystem trouble is 3, malformed data is 2.
    pub fn exit_code(&self) -> u8 {
        match self {
            EmitError::Io { .. } | EmitError::RefusingOverwrite { .. } => 3,
            EmitError::Malformed { .. } => 2,
        }
    }
}

pub fn raw_csv_path(dir: &Path, n: u32) -> PathBuf {
    dir.join(format!("raw_n{n}.csv"))
}

pub fn hist_csv_path(dir: &Path, n: u32) -> PathBuf {
    dir.join(format!("hist_n{n}.csv"))
}

fn create(path: &Path, overwrite: bool) -> Result<BufWriter<File>, EmitError> {
    let opened = if overwrite {
        File::create(path)
    } else {
        OpenOptions::new().write(true).create_new(true).open(path)
    };
    match opened {
        Ok(f) => Ok(BufWriter::new(f)),
        Err(e) if e.kind() == io::ErrorKind::AlreadyExists => Err(EmitError::RefusingOverwrite {
            path: path.to_path_buf(),
        }),
        Err(e) => Err(EmitError::io(path, e)),
    }
}

fn finish(mut w: BufWriter<File>, path: &Path) -> Result<(), EmitError> {
    w.flush().map_err(|e| EmitError::io(path, e))
}

/// Writes one raw per-trial CSV: `n,trial,seed,attempts,restarts,duration_ns,status`.
pub fn write_raw_csv(path: &Path, records: &[TrialRecord], overwrite: bool) -> Result<(), EmitError> {
    let mut w = create(path, overwrite)?;
    let io_err = |e| EmitError::io(path, e);
    writeln!(w, "n,trial,seed,attempts,restarts,duration_ns,status").map_err(io_err)?;
    for r in records {
        // Wall time is the one nondeterministic quantity a trial produces;
        // campaign files record 0 there so identical configurations emit
        // identical bytes. Callers that need timings take them from
        // TrialOutcome directly.
        writeln!(
            w,
            "{},{},{},{},{},0,{}",
            r.n, r.trial, r.seed, r.attempts, r.restarts, r.status
        )
        .map_err(io_err)?;
    }
    finish(w, path)
}

/// Writes one histogram CSV: `bin_lo,bin_hi,count`.
pub fn write_hist_csv(path: &Path, hist: &Histogram, overwrite: bool) -> Result<(), EmitError> {
    let mut w = create(path, overwrite)?;
    let io_err = |e| EmitError::io(path, e);
    writeln!(w, "bin_lo,bin_hi,count").map_err(io_err)?;
    for (lo, hi, count) in hist.bins() {
        writeln!(w, "{lo},{hi},{count}").map_err(io_err)?;
    }
    finish(w, path)
}

fn opt_field<T: Display>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_default()
}

/// Writes the summary table as CSV, one row per board size, empty fields
/// for the optional columns.
pub fn write_summary_csv(path: &Path, rows: &[SummaryRow], overwrite: bool) -> Result<(), EmitError> {
    let mut w = create(path, overwrite)?;
    let io_err = |e| EmitError::io(path, e);
    writeln!(
        w,
        "n,mean,median,mode,skew,kurtosis,lower,upper,distribution,back_attempts,speedup"
    )
    .map_err(io_err)?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{},{}",
            r.n,
            r.mean,
            r.median,
            r.mode,
            r.skew,
            r.kurtosis,
            r.lower,
            r.upper,
            opt_field(&r.distribution),
            opt_field(&r.back_attempts),
            opt_field(&r.speedup),
        )
        .map_err(io_err)?;
    }
    finish(w, path)
}

/// Writes the summary table as pretty-printed JSON (an array of row objects).
pub fn write_summary_json(path: &Path, rows: &[SummaryRow], overwrite: bool) -> Result<(), EmitError> {
    let mut w = create(path, overwrite)?;
    serde_json::to_writer_pretty(&mut w, rows).map_err(|e| EmitError::io(path, e.into()))?;
    writeln!(w).map_err(|e| EmitError::io(path, e))?;
    finish(w, path)
}

/// Writes the campaign manifest as pretty-printed JSON.
pub fn write_manifest(path: &Path, manifest: &Manifest, overwrite: bool) -> Result<(), EmitError> {
    let mut w = create(path, overwrite)?;
    serde_json::to_writer_pretty(&mut w, manifest).map_err(|e| EmitError::io(path, e.into()))?;
    writeln!(w).map_err(|e| EmitError::io(path, e))?;
    finish(w, path)
}

/// Reads the `attempts` column of successful (`status == ok`) rows from a
/// raw trial CSV. Column positions are taken from the header, so reordered
/// or extended raw files still read correctly.
pub fn read_raw_attempts(path: &Path) -> Result<Vec<u64>, EmitError> {
    let file = File::open(path).map_err(|e| EmitError::io(path, e))?;
    let reader = BufReader::new(file);
    let mut lines = reader.lines().enumerate();

    let header = match lines.next() {
        Some((_, Ok(line))) => line,
        Some((_, Err(e))) => return Err(EmitError::io(path, e)),
        None => {
            return Err(EmitError::Malformed {
                path: path.to_path_buf(),
                line: 1,
                reason: "empty file".to_string(),
            })
        }
    };
    let columns: Vec<&str> = header.split(',').map(str::trim).collect();
    let col = |name: &str| {
        columns.iter().position(|&c| c == name).ok_or_else(|| EmitError::Malformed {
            path: path.to_path_buf(),
            line: 1,
            reason: format!("missing column '{name}'"),
        })
    };
    let attempts_col = col("attempts")?;
    let status_col = col("status")?;

    let mut attempts = Vec::new();
    for (idx, line) in lines {
        let line = line.map_err(|e| EmitError::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let field = |col: usize| {
            fields.get(col).copied().ok_or_else(|| EmitError::Malformed {
                path: path.to_path_buf(),
                line: idx + 1,
                reason: format!("row has {} fields, expected at least {}", fields.len(), col + 1),
            })
        };
        if field(status_col)? != "ok" {
            continue;
        }
        let raw = field(attempts_col)?;
        let value = raw.parse::<u64>().map_err(|_| EmitError::Malformed {
            path: path.to_path_buf(),
            line: idx + 1,
            reason: format!("attempts value '{raw}' is not a non-negative integer"),
        })?;
        attempts.push(value);
    }
    Ok(attempts)
}
