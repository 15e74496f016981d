//! Residual reports: named per-point records with tolerances and verdicts,
//! serialized as JSON lines (records first, summary object last).

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PointRecord {
    pub index: usize,
    pub p: Vec<f64>,
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Summary {
    pub setup: String,
    pub setup_hash: String,
    pub suite: String,
    pub engine_version: String,
    pub seed: u64,
    pub grid_radius: f64,
    pub max_residual: f64,
    pub mean_residual: f64,
    pub total_points: usize,
    pub skipped_points: usize,
    pub verdict: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResidualReport {
    pub records: Vec<PointRecord>,
    pub summary: Summary,
}

impl ResidualReport {
    pub fn passed(&self) -> bool {
        self.summary.verdict == "pass"
    }

    /// JSON-lines rendering: one record per line, summary last.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("record serialization"));
            out.push('\n');
        }
        out.push_str(&serde_json::to_string(&self.summary).expect("summary serialization"));
        out.push('\n');
        out
    }

    pub fn from_jsonl(text: &str) -> Result<Self, serde_json::Error> {
        let mut lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
        let summary_line = lines.pop().unwrap_or("{}");
        let summary: Summary = serde_json::from_str(summary_line)?;
        let records = lines
            .iter()
            .map(|l| serde_json::from_str(l))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ResidualReport { records, summary })
    }
}

/// Deterministic content hash (FNV-1a over the exported setup JSON).
pub fn setup_hash(json: &str) -> String {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in json.as_bytes() {
        h ^= *b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    format!("{h:016x}")
}
