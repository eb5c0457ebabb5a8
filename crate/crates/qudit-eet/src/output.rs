//! Deterministic text outputs: CSV tables, key = value files, and the run
//! manifest. Floats are always written as `{:.16e}` — 17 significant digits,
//! which round-trips every f64 — so equal results are equal bytes, whatever
//! the thread count or platform.

use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::entanglement::EntanglementTrace;
use crate::experiments::{GammaSweep, SurfaceCell, TruncationComparison};

#[derive(Debug, Error)]
pub enum OutputError {
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

/// Exact-round-trip float form used in every machine-readable output.
pub fn fmt_f(v: f64) -> String {
    format!("{v:.16e}")
}

fn csv_line(out: &mut String, cells: &[String]) {
    out.push_str(&cells.join(","));
    out.push('\n');
}

/// `gamma,gamma2,entropy` rows of one trace.
pub fn trace_csv(trace: &EntanglementTrace) -> String {
    let mut s = String::with_capacity(trace.samples.len() * 72 + 32);
    s.push_str("gamma,gamma2,entropy\n");
    let gamma = fmt_f(trace.gamma);
    for &(g2, e) in &trace.samples {
        csv_line(&mut s, &[gamma.clone(), fmt_f(g2), fmt_f(e)]);
    }
    s
}

/// Same shape as [`trace_csv`], γ outermost, so a fixed-γ slice of the
/// surface file is byte-comparable with the standalone trace file.
pub fn surface_csv(cells: &[SurfaceCell]) -> String {
    let mut s = String::with_capacity(cells.len() * 72 + 32);
    s.push_str("gamma,gamma2,entropy\n");
    for c in cells {
        csv_line(&mut s, &[fmt_f(c.gamma), fmt_f(c.gamma2), fmt_f(c.entropy)]);
    }
    s
}

/// `gamma,p0,p1,p2,p3,e_max,e_max_gamma2` rows.
pub fn sweep_csv(sweep: &GammaSweep) -> String {
    let mut s = String::with_capacity(sweep.rows.len() * 170 + 64);
    s.push_str("gamma,p0,p1,p2,p3,e_max,e_max_gamma2\n");
    for row in &sweep.rows {
        let mut cells = vec![fmt_f(row.gamma)];
        cells.extend(row.populations.iter().map(|&p| fmt_f(p)));
        cells.push(fmt_f(row.e_max));
        cells.push(fmt_f(row.e_max_gamma2));
        csv_line(&mut s, &cells);
    }
    s
}

/// `truncation,gamma2,entropy` rows, traces concatenated in canonical mode
/// order.
pub fn truncation_csv(cmp: &TruncationComparison) -> String {
    let mut s = String::new();
    s.push_str("truncation,gamma2,entropy\n");
    for trace in &cmp.traces {
        let label = trace.truncation.label().to_string();
        for &(g2, e) in &trace.samples {
            csv_line(&mut s, &[label.clone(), fmt_f(g2), fmt_f(e)]);
        }
    }
    s
}

/// `level,population` rows.
pub fn populations_csv(populations: &[f64]) -> String {
    let mut s = String::from("level,population\n");
    for (level, &p) in populations.iter().enumerate() {
        csv_line(&mut s, &[level.to_string(), fmt_f(p)]);
    }
    s
}

/// Flat `key = value` file, one pair per line, full float precision.
pub fn kv_file(pairs: &[(String, f64)]) -> String {
    let mut s = String::new();
    for (k, v) in pairs {
        s.push_str(k);
        s.push_str(" = ");
        s.push_str(&fmt_f(*v));
        s.push('\n');
    }
    s
}

/// What a run produced, written next to the outputs. Carries no timestamps
/// or host details: rerunning the same command must reproduce the same
/// bytes.
#[derive(Debug, Default)]
pub struct Manifest {
    pub subcommand: String,
    /// Path of the config file, or "(defaults)".
    pub config_source: String,
    pub notices: Vec<String>,
    /// (file name, one-line description) in write order.
    pub outputs: Vec<(String, String)>,
}

impl Manifest {
    pub fn render(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!(
            "tool = {} {}\n",
            env!("CARGO_PKG_NAME"),
            env!("CARGO_PKG_VERSION")
        ));
        s.push_str(&format!("subcommand = {}\n", self.subcommand));
        s.push_str(&format!("config = {}\n", self.config_source));
        for n in &self.notices {
            s.push_str(&format!("notice = {n}\n"));
        }
        for (name, desc) in &self.outputs {
            s.push_str(&format!("output = {name}: {desc}\n"));
        }
        s
    }
}

/// Write `content` to `dir/name`, creating `dir` as needed.
pub fn write_text(dir: &Path, name: &str, content: &str) -> Result<PathBuf, OutputError> {
    std::fs::create_dir_all(dir).map_err(|source| OutputError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let path = dir.join(name);
    std::fs::write(&path, content).map_err(|source| OutputError::Io {
        path: path.clone(),
        source,
    })?;
    Ok(path)
}
