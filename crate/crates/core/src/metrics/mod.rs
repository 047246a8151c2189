//! Quality indicators and statistics: IGD, front truncation, mean
//! standard scores, landscape similarity and the Wilcoxon signed-rank
//! test.

pub mod igd;
pub mod mss;
pub mod spearman;
pub mod wilcoxon;

use alloc::vec::Vec;
use core::fmt;

pub use igd::{igd, truncate_front, IgdReference};
pub use mss::{mss, pooled_stats, MssScore, TaskStats};
pub use spearman::{similarity, spearman_rho};
pub use wilcoxon::{wilcoxon_signed_rank, Direction, WilcoxonOutcome};

/// A set of objective vectors for one task, all of the same length.
///
/// Algorithm fronts and reference fronts both use this type. Mutual
/// nondomination is an invariant of how fronts are produced; it can be
/// audited with [`FrontSet::is_mutually_nondominated`], which is too
/// expensive to run on every construction.
#[derive(Clone, Debug, PartialEq)]
pub struct FrontSet {
    points: Vec<Vec<f64>>,
    objectives: usize,
}

impl FrontSet {
    pub fn new(points: Vec<Vec<f64>>) -> Result<Self, MetricError> {
        let objectives = match points.first() {
            Some(p) if !p.is_empty() => p.len(),
            _ => return Err(MetricError::EmptyFront),
        };
        if points.iter().any(|p| p.len() != objectives) {
            return Err(MetricError::ObjectiveMismatch);
        }
        Ok(Self { points, objectives })
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn into_points(self) -> Vec<Vec<f64>> {
        self.points
    }

    pub fn objectives(&self) -> usize {
        self.objectives
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Pairwise dominance audit; quadratic in the front size.
    pub fn is_mutually_nondominated(&self) -> bool {
        for (i, a) in self.points.iter().enumerate() {
            for b in self.points.iter().skip(i + 1) {
                if crate::nsga2::dominates(a, b) || crate::nsga2::dominates(b, a) {
                    return false;
                }
            }
        }
        true
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MetricError {
    EmptyFront,
    ObjectiveMismatch,
    /// A reference-front objective has zero spread, so normalization is
    /// undefined.
    DegenerateReference {
        objective: usize,
    },
    LengthMismatch,
}

impl fmt::Display for MetricError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetricError::EmptyFront => write!(f, "front has no points"),
            MetricError::ObjectiveMismatch => write!(f, "objective vector lengths differ"),
            MetricError::DegenerateReference { objective } => {
                write!(f, "reference front objective {objective} has zero range")
            }
            MetricError::LengthMismatch => write!(f, "paired samples differ in length"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for MetricError {}
