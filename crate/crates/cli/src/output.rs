//! CSV and JSON artifacts and the run manifest.

use std::collections::BTreeMap;
use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{CliError, Result};
use valdist_core::{CountingTable, RecordKind, TableRow, ZeroRecord};

pub const CSV_HEADER: &str = "r,n_zero,n_pole,N_zero,N_pole,ratio";

/// `x` with 10 significant digits.
pub fn sig10(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    if (-5..15).contains(&mag) {
        format!("{:.*}", (9 - mag).max(0) as usize, x)
    } else {
        format!("{x:.9e}")
    }
}

pub fn csv_row(row: &TableRow) -> String {
    format!(
        "{},{},{},{},{},{}",
        sig10(row.r),
        row.n_zero,
        row.n_pole,
        sig10(row.big_n_zero),
        sig10(row.big_n_pole),
        sig10(row.ratio)
    )
}

pub fn csv_table(table: &CountingTable) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in &table.rows {
        out.push_str(&csv_row(row));
        out.push('\n');
    }
    out
}

pub fn complex(z: Complex64) -> Value {
    json!([z.re, z.im])
}

pub fn record(z: &ZeroRecord) -> Value {
    json!({
        "position": complex(z.position),
        "multiplicity": z.multiplicity,
        "kind": match z.kind { RecordKind::Zero => "zero", RecordKind::Pole => "pole" },
        "certification_radius": z.certification_radius,
        "residual": z.residual,
        "cluster": z.cluster,
    })
}

pub fn records(zs: &[ZeroRecord]) -> Value {
    Value::Array(zs.iter().map(record).collect())
}

fn io(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

pub fn write_file(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(io(dir))?;
    }
    fs::write(path, text).map_err(io(path))
}

/// Appends CSV rows, writing the header first when the file is new or empty.
pub fn append_csv(path: &Path, rows: &[TableRow]) -> Result<()> {
    let fresh = fs::metadata(path).map(|m| m.len() == 0).unwrap_or(true);
    let mut f = OpenOptions::new().create(true).append(true).open(path).map_err(io(path))?;
    let mut text = String::new();
    if fresh {
        text.push_str(CSV_HEADER);
        text.push('\n');
    }
    for r in rows {
        text.push_str(&csv_row(r));
        text.push('\n');
    }
    f.write_all(text.as_bytes()).map_err(io(path))
}

pub fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// Writes to `out` when given, else to stdout.
pub fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => write_file(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Manifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub core_version: &'static str,
    pub command: String,
    pub argv: Vec<String>,
    /// Function configs keyed by the flag that named them.
    pub config: BTreeMap<String, Value>,
    pub parameters: BTreeMap<String, Value>,
    pub tolerances: BTreeMap<String, f64>,
    pub seed: u64,
    pub threads: usize,
    pub outputs: Vec<PathBuf>,
    pub exit_code: u8,
    pub wall_time_seconds: f64,
}

impl Manifest {
    pub fn new(command: &str, argv: Vec<String>, seed: u64, threads: usize) -> Self {
        Self {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            core_version: valdist_core::VERSION,
            command: command.into(),
            argv,
            config: BTreeMap::new(),
            parameters: BTreeMap::new(),
            tolerances: BTreeMap::new(),
            seed,
            threads,
            outputs: Vec::new(),
            exit_code: 0,
            wall_time_seconds: 0.0,
        }
    }

    pub fn tolerance(&mut self, name: &str, value: f64) {
        self.tolerances.insert(name.into(), value);
    }

    pub fn parameter(&mut self, name: &str, value: impl Into<Value>) {
        self.parameters.insert(name.into(), value.into());
    }
}
