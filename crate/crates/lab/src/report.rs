//! Result files: CSV trial tables, JSON summaries, and sweep collections.
//!
//! CSV floats carry 17 significant digits so records round-trip exactly;
//! infinities print as `inf` (girths of acyclic components). JSON files never
//! contain non-finite numbers.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::stats::{CorrelationSummary, ScalarSummary};

/// One CSV field.
#[derive(Clone, Debug)]
pub enum Cell {
    U(u64),
    F(f64),
    S(String),
}

impl std::fmt::Display for Cell {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Cell::U(v) => write!(f, "{v}"),
            Cell::S(v) => write!(f, "{v}"),
            Cell::F(v) => {
                if v.is_finite() {
                    write!(f, "{v:.16e}")
                } else if *v > 0.0 {
                    write!(f, "inf")
                } else if *v < 0.0 {
                    write!(f, "-inf")
                } else {
                    write!(f, "nan")
                }
            }
        }
    }
}

pub fn write_csv(path: &Path, header: &[&str], rows: &[Vec<Cell>]) -> std::io::Result<()> {
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        debug_assert_eq!(row.len(), header.len());
        let fields: Vec<String> = row.iter().map(Cell::to_string).collect();
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    atomic_write(path, out.as_bytes())
}

fn atomic_write(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir)?;
        }
    }
    let mut f = fs::File::create(path)?;
    f.write_all(bytes)?;
    f.flush()
}

/// Parameters a summary was produced under, echoed into every JSON file.
/// Thread count is deliberately absent: it must never change results.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub n: u64,
    pub lambda: f64,
    pub epsilon: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    pub trials: u64,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j_max: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummaryFile {
    pub experiment: String,
    pub config: ConfigEcho,
    pub scalars: BTreeMap<String, ScalarSummary>,
    pub correlations: BTreeMap<String, CorrelationSummary>,
    pub extras: BTreeMap<String, f64>,
}

impl SummaryFile {
    pub fn assert_json_safe(&self) {
        for (k, s) in &self.scalars {
            assert!(
                s.mean.is_finite() && s.variance.is_finite() && s.ci95.is_finite(),
                "non-finite summary for {k}"
            );
        }
        for (k, c) in &self.correlations {
            assert!(
                c.r.is_finite() && c.ci_low.is_finite() && c.ci_high.is_finite(),
                "non-finite correlation for {k}"
            );
        }
        for (k, v) in &self.extras {
            assert!(v.is_finite(), "non-finite extra {k}");
        }
    }
}

pub fn write_summary(path: &Path, summary: &SummaryFile) -> std::io::Result<()> {
    summary.assert_json_safe();
    let mut text = serde_json::to_string_pretty(summary).expect("serializable summary");
    text.push('\n');
    atomic_write(path, text.as_bytes())
}

pub fn read_summary(path: &Path) -> Result<SummaryFile, crate::LabError> {
    let text = fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| crate::LabError::Parse(format!("{}: {e}", path.display())))
}

/// One experiment re-run across a parameter sweep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepFile {
    pub experiment: String,
    pub parameter: String,
    pub points: Vec<SweepPoint>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    /// Swept parameter value as given on the command line.
    pub value: f64,
    /// epsilon^3 * n at this point, the sensitivity threshold variable.
    pub eps3n: f64,
    pub summary: SummaryFile,
}

pub fn write_sweep(path: &Path, sweep: &SweepFile) -> std::io::Result<()> {
    for p in &sweep.points {
        p.summary.assert_json_safe();
        assert!(p.value.is_finite() && p.eps3n.is_finite());
    }
    let mut text = serde_json::to_string_pretty(sweep).expect("serializable sweep");
    text.push('\n');
    atomic_write(path, text.as_bytes())
}

pub fn read_sweep(path: &Path) -> Result<SweepFile, crate::LabError> {
    let text = fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| crate::LabError::Parse(format!("{}: {e}", path.display())))
}
