//! Convergence-curve export: per (problem, task), the run-averaged IGD
//! of each algorithm per generation, as plot-ready CSV.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use crate::records::RunRecord;

/// Mean IGD per generation for one (problem, task, algorithm) cell.
#[derive(Clone, Debug, PartialEq)]
pub struct MeanCurve {
    pub algorithm: String,
    /// `(generation, evals, mean_igd)` per logged generation.
    pub points: Vec<(u32, u64, f64)>,
}

/// Averages run histories generation-wise. Runs of one cell normally
/// share their generation grid; if they do not, every run is resampled
/// onto the union evaluation axis (step interpolation) and a warning is
/// returned alongside.
pub fn mean_curve(histories: &[&[(u32, u64, f64)]], algorithm: &str) -> (MeanCurve, Option<String>) {
    let aligned = histories
        .windows(2)
        .all(|w| grids_match(w[0], w[1]));
    if aligned {
        let len = histories[0].len();
        let points = (0..len)
            .map(|g| {
                let sum: f64 = histories.iter().map(|h| h[g].2).sum();
                (
                    histories[0][g].0,
                    histories[0][g].1,
                    sum / histories.len() as f64,
                )
            })
            .collect();
        return (
            MeanCurve {
                algorithm: algorithm.to_string(),
                points,
            },
            None,
        );
    }

    // Union evaluation axis, step-interpolated per run.
    let mut axis: Vec<u64> = histories
        .iter()
        .flat_map(|h| h.iter().map(|p| p.1))
        .collect();
    axis.sort_unstable();
    axis.dedup();
    let points = axis
        .iter()
        .enumerate()
        .map(|(g, &evals)| {
            let mean = histories
                .iter()
                .map(|h| step_value(h, evals))
                .sum::<f64>()
                / histories.len() as f64;
            (g as u32, evals, mean)
        })
        .collect();
    (
        MeanCurve {
            algorithm: algorithm.to_string(),
            points,
        },
        Some(format!(
            "{algorithm}: generation grids differ across runs; resampled onto the evaluation axis"
        )),
    )
}

fn grids_match(a: &[(u32, u64, f64)], b: &[(u32, u64, f64)]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.0 == y.0 && x.1 == y.1)
}

fn step_value(history: &[(u32, u64, f64)], evals: u64) -> f64 {
    let mut value = history[0].2;
    for &(_, e, igd) in history {
        if e <= evals {
            value = igd;
        } else {
            break;
        }
    }
    value
}

/// CSV for one (problem, task): generation rows, one (evals, mean_igd)
/// column pair per algorithm, blank once an algorithm's curve ends.
pub fn curves_csv(curves: &[MeanCurve]) -> String {
    let mut header = String::from("generation");
    for c in curves {
        header.push_str(&format!(",{0}_evals,{0}_mean_igd", c.algorithm));
    }
    header.push('\n');
    let rows = curves.iter().map(|c| c.points.len()).max().unwrap_or(0);
    let mut out = header;
    for g in 0..rows {
        out.push_str(&g.to_string());
        for c in curves {
            match c.points.get(g) {
                Some(&(_, evals, igd)) => out.push_str(&format!(",{evals},{igd:.6e}")),
                None => out.push_str(",,"),
            }
        }
        out.push('\n');
    }
    out
}

/// Writes one CSV per (problem, task) into `dir`, returning the paths and
/// any resampling warnings.
pub fn write_curves(
    records: &[RunRecord],
    dir: &Path,
) -> Result<(Vec<PathBuf>, Vec<String>), String> {
    std::fs::create_dir_all(dir).map_err(|e| e.to_string())?;
    // (problem, task) -> algorithm -> run histories
    let mut cells: BTreeMap<(String, usize), BTreeMap<String, Vec<&[(u32, u64, f64)]>>> =
        BTreeMap::new();
    for r in records {
        for t in &r.tasks {
            if t.history.is_empty() {
                continue;
            }
            cells
                .entry((r.problem.clone(), t.task))
                .or_default()
                .entry(r.algorithm.clone())
                .or_default()
                .push(&t.history);
        }
    }
    let mut paths = Vec::new();
    let mut warnings = Vec::new();
    for ((problem, task), algos) in &cells {
        let mut curves = Vec::new();
        for (algorithm, histories) in algos {
            let (curve, warning) = mean_curve(histories, algorithm);
            if let Some(w) = warning {
                warnings.push(format!("{problem} T{task}: {w}"));
            }
            curves.push(curve);
        }
        let path = dir.join(format!("{problem}_T{task}.csv"));
        std::fs::write(&path, curves_csv(&curves)).map_err(|e| e.to_string())?;
        paths.push(path);
    }
    Ok((paths, warnings))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_run_curve_is_that_run() {
        let h: Vec<(u32, u64, f64)> = vec![(0, 100, 0.5), (1, 200, 0.25)];
        let (curve, warning) = mean_curve(&[&h], "nsga2");
        assert!(warning.is_none());
        assert_eq!(curve.points, h);
    }

    fn assert_points_eq(got: &[(u32, u64, f64)], want: &[(u32, u64, f64)]) {
        assert_eq!(got.len(), want.len());
        for (g, w) in got.iter().zip(want) {
            assert_eq!((g.0, g.1), (w.0, w.1));
            assert!((g.2 - w.2).abs() <= 1e-12, "{got:?} vs {want:?}");
        }
    }

    #[test]
    fn aligned_runs_average_pointwise() {
        let a: Vec<(u32, u64, f64)> = vec![(0, 100, 0.4), (1, 200, 0.2)];
        let b: Vec<(u32, u64, f64)> = vec![(0, 100, 0.6), (1, 200, 0.4)];
        let (curve, warning) = mean_curve(&[&a, &b], "momfea");
        assert!(warning.is_none());
        assert_points_eq(&curve.points, &[(0, 100, 0.5), (1, 200, 0.3)]);
    }

    #[test]
    fn misaligned_runs_are_resampled_with_a_warning() {
        let a: Vec<(u32, u64, f64)> = vec![(0, 100, 0.4), (1, 200, 0.2)];
        let b: Vec<(u32, u64, f64)> = vec![(0, 100, 0.6), (1, 150, 0.5), (2, 200, 0.4)];
        let (curve, warning) = mean_curve(&[&a, &b], "momfea");
        assert!(warning.is_some());
        assert_points_eq(
            &curve.points,
            &[(0, 100, 0.5), (1, 150, 0.45), (2, 200, 0.3)],
        );
    }

    #[test]
    fn csv_pads_the_shorter_curve() {
        let long = MeanCurve {
            algorithm: "momfea".into(),
            points: vec![(0, 100, 0.5), (1, 200, 0.25), (2, 300, 0.1)],
        };
        let short = MeanCurve {
            algorithm: "nsga2".into(),
            points: vec![(0, 50, 0.7)],
        };
        let csv = curves_csv(&[short, long]);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(
            lines[0],
            "generation,nsga2_evals,nsga2_mean_igd,momfea_evals,momfea_mean_igd"
        );
        assert!(lines[2].starts_with("1,,,200,"));
    }
}
