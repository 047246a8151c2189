//! Aggregation of persisted run records into the comparison report:
//! per-task mean/std IGD with run-paired Wilcoxon significance marks, and
//! the per-problem mean-standard-score difference with statistics pooled
//! over both algorithms' runs.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use mtbench_core::metrics::{mss, pooled_stats, wilcoxon_signed_rank, Direction, TaskStats};

use crate::records::RunRecord;

pub const SIGNIFICANCE_ALPHA: f64 = 0.05;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TaskComparison {
    pub problem: String,
    pub task: usize,
    pub runs: usize,
    pub nsga2_mean: f64,
    pub nsga2_std: f64,
    pub momfea_mean: f64,
    pub momfea_std: f64,
    pub p_value: f64,
    pub significant: bool,
    /// `"nsga2"` or `"momfea"` when the test is significant.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub better: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MssRow {
    pub problem: String,
    pub mss_nsga2: f64,
    pub mss_momfea: f64,
    /// `mss_momfea - mss_nsga2`; negative favors MO-MFEA.
    pub difference: f64,
    /// Tasks whose pooled spread was zero (scores defined as 0 there).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub degenerate_tasks: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub alpha: f64,
    pub comparisons: Vec<TaskComparison>,
    pub mss: Vec<MssRow>,
}

/// Final per-run IGD values of one (problem, algorithm, task) cell,
/// indexed by run.
fn cell_igds(
    records: &[&RunRecord],
    task: usize,
    runs: usize,
    label: &str,
) -> Result<Vec<f64>, String> {
    let mut values = vec![None; runs];
    for r in records {
        let slot = values
            .get_mut(r.run_index)
            .ok_or_else(|| format!("{label}: run index {} out of range", r.run_index))?;
        if slot.is_some() {
            return Err(format!("{label}: duplicate run index {}", r.run_index));
        }
        *slot = Some(r.tasks[task].final_igd);
    }
    values
        .into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| format!("{label}: missing run {i}")))
        .collect()
}

/// Builds the comparison report from records of both algorithms.
pub fn build_report(records: &[RunRecord], alpha: f64) -> Result<Report, String> {
    let mut by_problem: BTreeMap<&str, (Vec<&RunRecord>, Vec<&RunRecord>)> = BTreeMap::new();
    for r in records {
        let entry = by_problem.entry(&r.problem).or_default();
        match r.algorithm.as_str() {
            "nsga2" => entry.0.push(r),
            "momfea" => entry.1.push(r),
            other => return Err(format!("unknown algorithm in records: {other:?}")),
        }
    }

    let mut comparisons = Vec::new();
    let mut mss_rows = Vec::new();
    for (problem, (nsga2, momfea)) in &by_problem {
        if nsga2.is_empty() || momfea.is_empty() {
            return Err(format!(
                "{problem}: need both algorithms for the comparison (nsga2: {}, momfea: {})",
                nsga2.len(),
                momfea.len()
            ));
        }
        if nsga2.len() != momfea.len() {
            return Err(format!(
                "{problem}: unbalanced run counts (nsga2: {}, momfea: {})",
                nsga2.len(),
                momfea.len()
            ));
        }
        let runs = nsga2.len();
        let task_count = nsga2[0].tasks.len();

        let mut stats_per_task: Vec<TaskStats> = Vec::with_capacity(task_count);
        let mut igds_n: Vec<Vec<f64>> = Vec::with_capacity(task_count);
        let mut igds_m: Vec<Vec<f64>> = Vec::with_capacity(task_count);
        for task in 0..task_count {
            let n = cell_igds(nsga2, task, runs, &format!("{problem} nsga2 T{}", task + 1))?;
            let m = cell_igds(momfea, task, runs, &format!("{problem} momfea T{}", task + 1))?;
            let pooled: Vec<f64> = n.iter().chain(&m).copied().collect();
            stats_per_task.push(pooled_stats(&pooled));

            let outcome =
                wilcoxon_signed_rank(&n, &m, alpha).map_err(|e| format!("{problem}: {e}"))?;
            let better = if outcome.significant {
                outcome.direction.map(|d| {
                    match d {
                        Direction::ALower => "nsga2",
                        Direction::BLower => "momfea",
                    }
                    .to_string()
                })
            } else {
                None
            };
            let sn = pooled_stats(&n);
            let sm = pooled_stats(&m);
            comparisons.push(TaskComparison {
                problem: problem.to_string(),
                task: task + 1,
                runs,
                nsga2_mean: sn.mean,
                nsga2_std: sn.std,
                momfea_mean: sm.mean,
                momfea_std: sm.std,
                p_value: outcome.p_value,
                significant: outcome.significant,
                better,
            });
            igds_n.push(n);
            igds_m.push(m);
        }

        // MSS per run, averaged per algorithm.
        let mut degenerate: Vec<usize> = Vec::new();
        let mut mean_mss = |igds: &[Vec<f64>]| -> f64 {
            let mut acc = 0.0;
            for run in 0..runs {
                let per_task: Vec<f64> = (0..task_count).map(|t| igds[t][run]).collect();
                let score = mss(&per_task, &stats_per_task);
                for &t in &score.degenerate_tasks {
                    if !degenerate.contains(&(t + 1)) {
                        degenerate.push(t + 1);
                    }
                }
                acc += score.value;
            }
            acc / runs as f64
        };
        let mss_n = mean_mss(&igds_n);
        let mss_m = mean_mss(&igds_m);
        mss_rows.push(MssRow {
            problem: problem.to_string(),
            mss_nsga2: mss_n,
            mss_momfea: mss_m,
            difference: mss_m - mss_n,
            degenerate_tasks: degenerate,
        });
    }

    Ok(Report {
        alpha,
        comparisons,
        mss: mss_rows,
    })
}

pub fn comparisons_csv(report: &Report) -> String {
    let mut out = String::from(
        "problem,task,runs,nsga2_mean,nsga2_std,momfea_mean,momfea_std,p_value,significant,better\n",
    );
    for c in &report.comparisons {
        out.push_str(&format!(
            "{},{},{},{:.6e},{:.6e},{:.6e},{:.6e},{:.6e},{},{}\n",
            c.problem,
            c.task,
            c.runs,
            c.nsga2_mean,
            c.nsga2_std,
            c.momfea_mean,
            c.momfea_std,
            c.p_value,
            c.significant,
            c.better.as_deref().unwrap_or("")
        ));
    }
    out
}

pub fn mss_csv(report: &Report) -> String {
    let mut out = String::from("problem,mss_nsga2,mss_momfea,difference\n");
    for row in &report.mss {
        out.push_str(&format!(
            "{},{:.6},{:.6},{:.6}\n",
            row.problem, row.mss_nsga2, row.mss_momfea, row.difference
        ));
    }
    out
}

/// Writes `igd_summary.csv`, `mss.csv` and `report.json` into `dir`.
pub fn write_report(report: &Report, dir: &Path) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join("igd_summary.csv"), comparisons_csv(report))?;
    std::fs::write(dir.join("mss.csv"), mss_csv(report))?;
    let mut json = serde_json::to_string_pretty(report).expect("report serializes");
    json.push('\n');
    std::fs::write(dir.join("report.json"), json)?;
    Ok(())
}
