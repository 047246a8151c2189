//! Two-sided Wilcoxon signed-rank test for paired samples.
//!
//! Zero differences are dropped; tied absolute differences share average
//! ranks. Up to 25 effective pairs the p-value comes from the exact null
//! distribution of the rank sum (a counting recurrence over all 2^n sign
//! assignments); beyond that a normal approximation with tie correction
//! and continuity correction is used.

use alloc::vec;
use alloc::vec::Vec;

use super::MetricError;
use crate::math;
use crate::metrics::spearman::average_ranks;

const EXACT_LIMIT: usize = 25;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// The first sample tends lower.
    ALower,
    /// The second sample tends lower.
    BLower,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WilcoxonOutcome {
    pub p_value: f64,
    pub significant: bool,
    pub direction: Option<Direction>,
    pub w_plus: f64,
    pub w_minus: f64,
    /// Pairs remaining after zero differences were dropped.
    pub n_used: usize,
}

/// Runs the test on run-index-paired samples at significance `alpha`.
pub fn wilcoxon_signed_rank(
    a: &[f64],
    b: &[f64],
    alpha: f64,
) -> Result<WilcoxonOutcome, MetricError> {
    if a.len() != b.len() {
        return Err(MetricError::LengthMismatch);
    }
    let diffs: Vec<f64> = a
        .iter()
        .zip(b)
        .map(|(x, y)| x - y)
        .filter(|d| *d != 0.0)
        .collect();
    let n = diffs.len();
    if n == 0 {
        return Ok(WilcoxonOutcome {
            p_value: 1.0,
            significant: false,
            direction: None,
            w_plus: 0.0,
            w_minus: 0.0,
            n_used: 0,
        });
    }

    let abs: Vec<f64> = diffs.iter().map(|d| math::abs(*d)).collect();
    let ranks = average_ranks(&abs);
    let w_plus: f64 = ranks
        .iter()
        .zip(&diffs)
        .filter(|(_, d)| **d > 0.0)
        .map(|(r, _)| *r)
        .sum();
    let total = n as f64 * (n as f64 + 1.0) / 2.0;
    let w_minus = total - w_plus;

    let p_value = if n <= EXACT_LIMIT {
        exact_two_sided_p(&ranks, w_plus)
    } else {
        normal_two_sided_p(&ranks, w_plus, n)
    };

    let direction = if w_plus == w_minus {
        None
    } else if w_plus < w_minus {
        // Few/weak positive differences: a - b mostly negative.
        Some(Direction::ALower)
    } else {
        Some(Direction::BLower)
    };

    Ok(WilcoxonOutcome {
        p_value,
        significant: p_value < alpha,
        direction,
        w_plus,
        w_minus,
        n_used: n,
    })
}

/// Exact two-sided p: the probability, over all sign assignments, of a
/// rank sum at least as far from the null mean as the observed one.
///
/// Works in doubled-rank units so average ranks stay integral.
fn exact_two_sided_p(ranks: &[f64], w_plus: f64) -> f64 {
    let n = ranks.len();
    let doubled: Vec<usize> = ranks.iter().map(|r| (2.0 * r + 0.5) as usize).collect();
    let total: usize = doubled.iter().sum();
    let mut counts = vec![0u64; total + 1];
    counts[0] = 1;
    let mut reach = 0usize;
    for &d in &doubled {
        reach += d;
        for s in (d..=reach).rev() {
            counts[s] += counts[s - d];
        }
    }
    let observed = (2.0 * w_plus + 0.5) as i64;
    let dev = (2 * observed - total as i64).abs();
    let mut hits = 0u64;
    for (s, &c) in counts.iter().enumerate() {
        if (2 * s as i64 - total as i64).abs() >= dev {
            hits += c;
        }
    }
    hits as f64 / (1u64 << n) as f64
}

fn normal_two_sided_p(ranks: &[f64], w_plus: f64, n: usize) -> f64 {
    let nf = n as f64;
    let mean = nf * (nf + 1.0) / 4.0;
    // Tie correction: subtract sum(t^3 - t) / 48 over tie groups.
    let mut tie_term = 0.0;
    let mut sorted = ranks.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i + 1;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        let t = (j - i) as f64;
        tie_term += t * t * t - t;
        i = j;
    }
    let var = nf * (nf + 1.0) * (2.0 * nf + 1.0) / 24.0 - tie_term / 48.0;
    if var <= 0.0 {
        return 1.0;
    }
    let delta = w_plus - mean;
    let corrected = if delta > 0.0 {
        delta - 0.5
    } else if delta < 0.0 {
        delta + 0.5
    } else {
        return 1.0;
    };
    let z = corrected / math::sqrt(var);
    (math::erfc(math::abs(z) / math::sqrt(2.0))).min(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_samples_are_not_significant() {
        let a = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0];
        let out = wilcoxon_signed_rank(&a, &a, 0.05).unwrap();
        assert_eq!(out.p_value, 1.0);
        assert!(!out.significant);
        assert_eq!(out.direction, None);
        assert_eq!(out.n_used, 0);
    }

    #[test]
    fn one_sided_sweep_is_decisively_significant() {
        let a: Vec<f64> = (0..30).map(|i| i as f64).collect();
        let b: Vec<f64> = a.iter().map(|v| v + 1.0).collect();
        let out = wilcoxon_signed_rank(&a, &b, 0.05).unwrap();
        assert!(out.p_value < 0.001, "p = {}", out.p_value);
        assert!(out.significant);
        assert_eq!(out.direction, Some(Direction::ALower));
    }

    #[test]
    fn swapping_the_samples_mirrors_the_direction() {
        let a = [0.1, 0.5, 0.3, 0.9, 0.2, 0.8, 0.4, 0.35];
        let b = [0.2, 0.45, 0.5, 1.0, 0.4, 0.7, 0.6, 0.5];
        let ab = wilcoxon_signed_rank(&a, &b, 0.05).unwrap();
        let ba = wilcoxon_signed_rank(&b, &a, 0.05).unwrap();
        assert_eq!(ab.p_value, ba.p_value);
        assert_eq!(ab.w_plus, ba.w_minus);
        assert_eq!(ab.direction, Some(Direction::ALower));
        assert_eq!(ba.direction, Some(Direction::BLower));
    }

    #[test]
    fn exact_p_for_n12_matches_enumeration() {
        // Independent oracle: enumerate all 2^n sign assignments.
        let a = [5.0, 3.0, 8.0, 1.0, 9.0, 2.0, 7.0, 4.0, 6.0, 1.5, 2.5, 0.5];
        let b = [4.0, 3.5, 6.0, 2.0, 7.5, 2.2, 7.4, 3.0, 6.5, 1.0, 2.4, 1.5];
        let diffs: Vec<f64> = a.iter().zip(&b).map(|(x, y)| x - y).collect();
        let abs: Vec<f64> = diffs.iter().map(|d| d.abs()).collect();
        let ranks = average_ranks(&abs);
        let n = diffs.len();
        let w_obs: f64 = ranks
            .iter()
            .zip(&diffs)
            .filter(|(_, d)| **d > 0.0)
            .map(|(r, _)| *r)
            .sum();
        let total: f64 = ranks.iter().sum();
        let dev = (w_obs - total / 2.0).abs();
        let mut hits = 0u64;
        for mask in 0u64..(1 << n) {
            let w: f64 = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| ranks[i]).sum();
            if (w - total / 2.0).abs() >= dev - 1e-12 {
                hits += 1;
            }
        }
        let oracle = hits as f64 / (1u64 << n) as f64;
        let out = wilcoxon_signed_rank(&a, &b, 0.05).unwrap();
        assert!(
            (out.p_value - oracle).abs() <= 1e-12,
            "exact {} vs oracle {oracle}",
            out.p_value
        );
    }

    #[test]
    fn length_mismatch_is_an_error() {
        assert_eq!(
            wilcoxon_signed_rank(&[1.0], &[1.0, 2.0], 0.05),
            Err(MetricError::LengthMismatch)
        );
    }

    #[test]
    fn large_sample_uses_a_sane_normal_tail() {
        let a: Vec<f64> = (0..40).map(|i| (i as f64 * 0.37).sin()).collect();
        let b: Vec<f64> = a.iter().map(|v| v + 0.3).collect();
        let out = wilcoxon_signed_rank(&a, &b, 0.05).unwrap();
        assert!(out.p_value > 0.0 && out.p_value < 1e-4);
        assert_eq!(out.direction, Some(Direction::ALower));
    }
}
