//! Mean standard score: the average z-score of one run's per-task IGD
//! values against statistics pooled over every algorithm's runs on that
//! task. Smaller is better.

use alloc::vec::Vec;

use crate::math;

/// Pooled mean and standard deviation of one task's IGD sample.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TaskStats {
    pub mean: f64,
    pub std: f64,
    pub n: usize,
}

/// Sample statistics (n - 1 denominator) of a pooled IGD sample.
pub fn pooled_stats(values: &[f64]) -> TaskStats {
    let n = values.len();
    assert!(n > 0, "pooled stats need at least one value");
    let mean = values.iter().sum::<f64>() / n as f64;
    let std = if n > 1 {
        let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1) as f64;
        math::sqrt(var)
    } else {
        0.0
    };
    TaskStats { mean, std, n }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MssScore {
    pub value: f64,
    /// Tasks whose pooled standard deviation was zero; their terms are
    /// defined as 0 (every algorithm scored identically there).
    pub degenerate_tasks: Vec<usize>,
}

/// Mean standard score of one run's per-task IGD values.
pub fn mss(task_igds: &[f64], stats: &[TaskStats]) -> MssScore {
    assert_eq!(task_igds.len(), stats.len());
    assert!(!task_igds.is_empty());
    let mut degenerate_tasks = Vec::new();
    let mut acc = 0.0;
    for (k, (&igd, s)) in task_igds.iter().zip(stats).enumerate() {
        if s.std > 0.0 {
            acc += (igd - s.mean) / s.std;
        } else {
            degenerate_tasks.push(k);
        }
    }
    MssScore {
        value: acc / task_igds.len() as f64,
        degenerate_tasks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn score_at_the_means_is_zero() {
        let stats = [
            TaskStats { mean: 2.0, std: 0.5, n: 60 },
            TaskStats { mean: 9.0, std: 1.5, n: 60 },
        ];
        let s = mss(&[2.0, 9.0], &stats);
        assert_eq!(s.value, 0.0);
        assert!(s.degenerate_tasks.is_empty());
    }

    #[test]
    fn opposite_deviations_cancel() {
        let stats = [
            TaskStats { mean: 1.0, std: 0.25, n: 10 },
            TaskStats { mean: 4.0, std: 2.0, n: 10 },
        ];
        let s = mss(&[1.25, 2.0], &stats);
        assert!(s.value.abs() <= 1e-15);
    }

    #[test]
    fn single_task_two_sigma() {
        let stats = [TaskStats { mean: 3.0, std: 0.5, n: 30 }];
        let s = mss(&[4.0], &stats);
        assert!((s.value - 2.0).abs() <= 1e-15);
    }

    #[test]
    fn zero_spread_tasks_are_flagged_not_divided() {
        let stats = [
            TaskStats { mean: 1.0, std: 0.0, n: 5 },
            TaskStats { mean: 1.0, std: 1.0, n: 5 },
        ];
        let s = mss(&[7.0, 2.0], &stats);
        assert_eq!(s.degenerate_tasks, vec![0]);
        assert!((s.value - 0.5).abs() <= 1e-15);
    }

    #[test]
    fn pooled_stats_match_hand_computation() {
        let s = pooled_stats(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(s.mean, 2.5);
        assert!((s.std - math::sqrt(5.0 / 3.0)).abs() <= 1e-15);
        assert_eq!(s.n, 4);
    }
}
