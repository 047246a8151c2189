//! Spearman rank correlation and the landscape-similarity estimator.
//!
//! Similarity between the two tasks of a problem is the rank correlation
//! of their `q` values over uniform samples of the unified space; the
//! reference protocol draws one million points.

use alloc::vec;
use alloc::vec::Vec;

use crate::math;
use crate::problems::BenchmarkProblem;
use crate::rng::RunRng;

/// Average ranks (1-based), ties sharing the mean of their positions.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).expect("finite values"));
    let mut ranks = vec![0.0; n];
    let mut i = 0;
    while i < n {
        let mut j = i + 1;
        while j < n && values[order[j]] == values[order[i]] {
            j += 1;
        }
        // Positions i..j (0-based) share the average 1-based rank.
        let rank = (i + 1 + j) as f64 / 2.0;
        for &idx in &order[i..j] {
            ranks[idx] = rank;
        }
        i = j;
    }
    ranks
}

/// Spearman's rank correlation with average-rank tie handling.
pub fn spearman_rho(x: &[f64], y: &[f64]) -> f64 {
    assert_eq!(x.len(), y.len(), "paired samples must have equal length");
    assert!(x.len() >= 2, "correlation needs at least two samples");
    let rx = average_ranks(x);
    let ry = average_ranks(y);
    pearson(&rx, &ry)
}

fn pearson(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (a, b) in x.iter().zip(y) {
        let dx = a - mx;
        let dy = b - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return 0.0;
    }
    sxy / math::sqrt(sxx * syy)
}

/// Estimates the similarity between the two tasks of `problem`: uniform
/// unified-space samples, each task's `q` on its own decoding, Spearman
/// correlation of the two value sequences.
pub fn similarity(problem: &BenchmarkProblem, sample_count: usize, rng: &mut RunRng) -> f64 {
    assert!(sample_count >= 2, "similarity needs at least two samples");
    let d = problem.unified_dim();
    let views = [problem.task_view(0), problem.task_view(1)];
    let mut q1 = Vec::with_capacity(sample_count);
    let mut q2 = Vec::with_capacity(sample_count);
    let mut y = vec![0.0; d];
    for _ in 0..sample_count {
        for v in &mut y {
            *v = rng.next_f64();
        }
        q1.push(views[0].q_unified(&y).expect("decoded points are bounded"));
        q2.push(views[1].q_unified(&y).expect("decoded points are bounded"));
    }
    spearman_rho(&q1, &q2)
}
