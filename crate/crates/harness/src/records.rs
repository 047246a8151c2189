//! Per-run JSON records: the durable, replayable provenance of every
//! optimizer run. One file per (problem, algorithm, run index).
//!
//! Records are deterministic byte for byte: serialization order is fixed
//! and wall-clock timing is deliberately kept out (the runner reports it
//! separately), so rerunning a configuration reproduces identical files.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RunRecord {
    pub schema_version: u32,
    pub problem: String,
    pub algorithm: String,
    pub run_index: usize,
    pub master_seed: u64,
    /// Derived stream seed per sub-run: two entries for NSGA-II (one per
    /// task), one for MO-MFEA.
    pub stream_seeds: Vec<u64>,
    /// Evaluations consumed per sub-run, aligned with `stream_seeds`.
    pub evals: Vec<u64>,
    pub budget: u64,
    pub pop_size: usize,
    pub pc: f64,
    pub pm: f64,
    pub eta_c: f64,
    pub eta_m: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rmp: Option<f64>,
    pub data_provenance: String,
    pub tasks: Vec<TaskRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TaskRecord {
    /// 1-based task number.
    pub task: usize,
    pub pstar_size: usize,
    pub pstar_hash: String,
    /// IGD of the truncated final front against the reference.
    pub final_igd: f64,
    /// Final front after the 100/120 cap, one objective vector per entry.
    pub front: Vec<Vec<f64>>,
    /// `[generation, evals, igd]` per logged generation.
    pub history: Vec<(u32, u64, f64)>,
}

impl RunRecord {
    pub fn file_name(&self) -> String {
        format!(
            "{}_{}_run{:03}.json",
            self.problem, self.algorithm, self.run_index
        )
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("record serializes");
        out.push('\n');
        out
    }

    pub fn write_into(&self, dir: &Path) -> std::io::Result<PathBuf> {
        std::fs::create_dir_all(dir)?;
        let path = dir.join(self.file_name());
        std::fs::write(&path, self.to_json())?;
        Ok(path)
    }
}

/// Reads every `*.json` record in a directory, sorted by file name.
pub fn read_records(dir: &Path) -> Result<Vec<RunRecord>, String> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| format!("cannot read {}: {e}", dir.display()))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "json"))
        .collect();
    paths.sort();
    let mut records = Vec::with_capacity(paths.len());
    for path in paths {
        let text = std::fs::read_to_string(&path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        let record: RunRecord = serde_json::from_str(&text)
            .map_err(|e| format!("{}: bad record: {e}", path.display()))?;
        records.push(record);
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> RunRecord {
        RunRecord {
            schema_version: SCHEMA_VERSION,
            problem: "CIHS".into(),
            algorithm: "momfea".into(),
            run_index: 3,
            master_seed: 42,
            stream_seeds: vec![99],
            evals: vec![200_000],
            budget: 200_000,
            pop_size: 200,
            pc: 0.9,
            pm: 0.02,
            eta_c: 20.0,
            eta_m: 20.0,
            rmp: Some(0.3),
            data_provenance: "generated:2016".into(),
            tasks: vec![TaskRecord {
                task: 1,
                pstar_size: 5000,
                pstar_hash: "fnv1a64:0123456789abcdef".into(),
                final_igd: 1.25e-3,
                front: vec![vec![0.0, 1.0], vec![1.0, 0.0]],
                history: vec![(0, 400, 0.5), (1, 600, 0.25)],
            }],
            warnings: vec![],
        }
    }

    #[test]
    fn json_round_trip_is_stable() {
        let r = sample();
        let text = r.to_json();
        let back: RunRecord = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn records_write_and_read_back_in_name_order() {
        let dir = std::env::temp_dir().join("mtbench-records-test");
        let _ = std::fs::remove_dir_all(&dir);
        let mut b = sample();
        b.run_index = 0;
        b.algorithm = "nsga2".into();
        sample().write_into(&dir).unwrap();
        b.write_into(&dir).unwrap();
        let records = read_records(&dir).unwrap();
        assert_eq!(records.len(), 2);
        assert_eq!(records[0].algorithm, "momfea");
        assert_eq!(records[1].algorithm, "nsga2");
    }
}
