//! Shift/rotation task data and the `z = M (x - s)` transform applied to
//! a task's tail variables before the landscape function.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::math;

/// Row-major square matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct SquareMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SquareMatrix {
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self, TransformError> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(TransformError::NotSquare);
        }
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            data.extend(row);
        }
        Ok(Self { n, data })
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            data[i * n + i] = 1.0;
        }
        Self { n, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.n + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.data[row * self.n..(row + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.n)
    }

    pub fn mul_vec(&self, x: &[f64], out: &mut Vec<f64>) {
        debug_assert_eq!(x.len(), self.n);
        out.clear();
        out.extend(
            self.rows()
                .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum::<f64>()),
        );
    }

    /// `max |M M^T - I|`, the orthogonality defect.
    pub fn orthogonality_error(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.n {
            for j in i..self.n {
                let dot: f64 = self.row(i).iter().zip(self.row(j)).map(|(a, b)| a * b).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max(math::abs(dot - target));
            }
        }
        worst
    }
}

/// Where a task's shift/rotation assets came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// No assets required.
    None,
    OfficialFile,
    Generated { seed: u64 },
}

/// Optional shift and rotation for one task's tail variables.
#[derive(Clone, Debug)]
pub struct TaskData {
    pub shift: Option<Vec<f64>>,
    pub rotation: Option<SquareMatrix>,
    pub provenance: Provenance,
}

impl TaskData {
    pub fn none() -> Self {
        Self {
            shift: None,
            rotation: None,
            provenance: Provenance::None,
        }
    }

    pub fn tail_dim_matches(&self, m: usize) -> bool {
        self.shift.as_ref().map_or(true, |s| s.len() == m)
            && self.rotation.as_ref().map_or(true, |r| r.n() == m)
    }
}

/// `z = M (x - s)`, with identity substituted for absent pieces.
pub fn apply_transform(x_tail: &[f64], data: &TaskData) -> Result<Vec<f64>, TransformError> {
    if !data.tail_dim_matches(x_tail.len()) {
        return Err(TransformError::DimensionMismatch { got: x_tail.len() });
    }
    let mut out = Vec::with_capacity(x_tail.len());
    apply_transform_into(x_tail, data, &mut out, &mut Vec::new());
    Ok(out)
}

/// Allocation-free variant for the evaluation hot path; dimensions must
/// already match.
pub(crate) fn apply_transform_into(
    x_tail: &[f64],
    data: &TaskData,
    out: &mut Vec<f64>,
    scratch: &mut Vec<f64>,
) {
    match (&data.shift, &data.rotation) {
        (None, None) => {
            out.clear();
            out.extend_from_slice(x_tail);
        }
        (Some(s), None) => {
            out.clear();
            out.extend(x_tail.iter().zip(s).map(|(x, s)| x - s));
        }
        (None, Some(m)) => m.mul_vec(x_tail, out),
        (Some(s), Some(m)) => {
            scratch.clear();
            scratch.extend(x_tail.iter().zip(s).map(|(x, s)| x - s));
            m.mul_vec(scratch, out);
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransformError {
    NotSquare,
    DimensionMismatch { got: usize },
}

impl fmt::Display for TransformError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransformError::NotSquare => write!(f, "matrix rows do not form a square"),
            TransformError::DimensionMismatch { got } => {
                write!(f, "task data does not match a tail of {got} variables")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for TransformError {}
