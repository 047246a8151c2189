//! The unified search space and per-task decoding.
//!
//! Both optimizers evolve genotypes in `[0,1]^D`, where `D` is the largest
//! task dimensionality of the problem. A task with `n <= D` variables reads
//! the first `n` components and maps them affinely into its own box bounds.

use alloc::vec::Vec;
use core::fmt;

/// A point of the unified space; every component lies in `[0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct UnifiedVector {
    values: Vec<f64>,
}

impl UnifiedVector {
    /// Wraps `values`, checking the unit-box invariant.
    pub fn new(values: Vec<f64>) -> Result<Self, SpaceError> {
        if let Some(&bad) = values.iter().find(|v| !(0.0..=1.0).contains(*v)) {
            return Err(SpaceError::OutOfUnitBox { value: bad });
        }
        Ok(Self { values })
    }

    /// Wraps `values`, clamping every component into `[0, 1]`.
    pub fn clamped(mut values: Vec<f64>) -> Self {
        for v in &mut values {
            *v = v.clamp(0.0, 1.0);
        }
        Self { values }
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }

    pub(crate) fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }
}

/// Dimensionality, box bounds and objective count of one task.
#[derive(Clone, Debug)]
pub struct TaskSpec {
    lower: Vec<f64>,
    upper: Vec<f64>,
    objectives: usize,
}

impl TaskSpec {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>, objectives: usize) -> Result<Self, SpaceError> {
        if lower.len() != upper.len() || lower.is_empty() {
            return Err(SpaceError::DimensionMismatch {
                needed: lower.len(),
                got: upper.len(),
            });
        }
        if lower.iter().zip(&upper).any(|(l, u)| !(l < u)) {
            return Err(SpaceError::EmptyBounds);
        }
        if !(2..=3).contains(&objectives) {
            return Err(SpaceError::BadObjectiveCount { got: objectives });
        }
        Ok(Self {
            lower,
            upper,
            objectives,
        })
    }

    pub fn n(&self) -> usize {
        self.lower.len()
    }

    pub fn objectives(&self) -> usize {
        self.objectives
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    /// Componentwise inclusive bounds check.
    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.n()
            && x.iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(v, (l, u))| *v >= *l && *v <= *u)
    }
}

/// Maps the first `spec.n()` components of `y` into the task's bounds:
/// `x[i] = lower[i] + y[i] * (upper[i] - lower[i])`.
pub fn decode(y: &UnifiedVector, spec: &TaskSpec) -> Result<Vec<f64>, SpaceError> {
    if y.dim() < spec.n() {
        return Err(SpaceError::DimensionMismatch {
            needed: spec.n(),
            got: y.dim(),
        });
    }
    let mut out = Vec::with_capacity(spec.n());
    decode_into(y.as_slice(), spec, &mut out);
    Ok(out)
}

pub(crate) fn decode_into(y: &[f64], spec: &TaskSpec, out: &mut Vec<f64>) {
    out.clear();
    out.extend(
        y[..spec.n()]
            .iter()
            .zip(spec.lower.iter().zip(&spec.upper))
            .map(|(v, (l, u))| l + v * (u - l)),
    );
}

/// Inverse affine map of [`decode`]; intended for tests and tooling.
pub fn encode(x: &[f64], spec: &TaskSpec) -> Result<UnifiedVector, SpaceError> {
    if x.len() != spec.n() {
        return Err(SpaceError::DimensionMismatch {
            needed: spec.n(),
            got: x.len(),
        });
    }
    let values = x
        .iter()
        .zip(spec.lower.iter().zip(&spec.upper))
        .map(|(v, (l, u))| (v - l) / (u - l))
        .collect();
    UnifiedVector::new(values)
}

#[derive(Clone, Debug, PartialEq)]
pub enum SpaceError {
    DimensionMismatch { needed: usize, got: usize },
    OutOfUnitBox { value: f64 },
    EmptyBounds,
    BadObjectiveCount { got: usize },
}

impl fmt::Display for SpaceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceError::DimensionMismatch { needed, got } => {
                write!(f, "dimension mismatch: needed {needed}, got {got}")
            }
            SpaceError::OutOfUnitBox { value } => {
                write!(f, "component {value} outside the unit box")
            }
            SpaceError::EmptyBounds => write!(f, "lower bound not strictly below upper bound"),
            SpaceError::BadObjectiveCount { got } => {
                write!(f, "objective count must be 2 or 3, got {got}")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for SpaceError {}
