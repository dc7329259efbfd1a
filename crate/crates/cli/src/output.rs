//! On-disk formats: trajectory CSV and JSON reports.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};
use dyadic::Trajectory;
use serde::Serialize;
use sha2::{Digest, Sha256};

/// Header `t,X1,...,XN`, then one row per sample with 17 significant digits.
pub fn write_trajectory_csv(path: &Path, traj: &Trajectory) -> Result<()> {
    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    let mut w = BufWriter::new(file);
    write!(w, "t")?;
    for n in 1..=traj.dim() {
        write!(w, ",X{n}")?;
    }
    writeln!(w)?;
    for i in 0..traj.len() {
        write!(w, "{:.16e}", traj.time(i))?;
        for v in traj.state(i) {
            write!(w, ",{v:.16e}")?;
        }
        writeln!(w)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_series_csv(path: &Path, header: &str, rows: &[(f64, f64)]) -> Result<()> {
    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    let mut w = BufWriter::new(file);
    writeln!(w, "{header}")?;
    for (a, b) in rows {
        writeln!(w, "{a:.16e},{b:.16e}")?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))
}

pub fn ensure_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))
}

/// First 16 hex digits of the SHA-256 of `text`.
pub fn content_hash(text: &str) -> String {
    let digest = Sha256::digest(text.as_bytes());
    hex::encode(&digest[..8])
}
