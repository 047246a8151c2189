//! The six landscape functions that shape the tasks' `q` values.
//!
//! Each maps `m` tail variables to a scalar with analytic minimum 1: the
//! constant offsets are chosen so that `q(z*) = 1` at the optimum (the
//! origin for all kinds except Rosenbrock, whose optimum is all-ones).

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{E, PI};
use core::fmt;

use crate::math;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseFunction {
    /// `1 + sum z_i^2`
    Sphere,
    /// `1 + (9/m) * sum |z_i|`
    MeanAbs,
    /// `1 + sum 100 (z_i^2 - z_{i+1})^2 + (1 - z_i)^2`, minimum at all-ones
    Rosenbrock,
    /// `21 + e - 20 exp(-0.2 sqrt(mean z^2)) - exp(mean cos 2 pi z)`
    Ackley,
    /// `1 + sum z_i^2 - 10 cos(2 pi z_i) + 10`
    Rastrigin,
    /// `2 + (1/4000) sum z_i^2 - prod cos(z_i / sqrt(i))`
    Griewank,
}

impl BaseFunction {
    /// Coordinates of the analytic minimum for an `m`-variable tail.
    pub fn optimum(&self, m: usize) -> Vec<f64> {
        match self {
            BaseFunction::Rosenbrock => vec![1.0; m],
            _ => vec![0.0; m],
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            BaseFunction::Sphere => "sphere",
            BaseFunction::MeanAbs => "mean-abs",
            BaseFunction::Rosenbrock => "rosenbrock",
            BaseFunction::Ackley => "ackley",
            BaseFunction::Rastrigin => "rastrigin",
            BaseFunction::Griewank => "griewank",
        }
    }
}

/// Evaluates the landscape value; `>= 1` for every kind on finite input.
pub fn base_q(kind: BaseFunction, z: &[f64]) -> Result<f64, EvalError> {
    debug_assert!(!z.is_empty());
    if z.iter().any(|v| !v.is_finite()) {
        return Err(EvalError::NonFiniteInput);
    }
    let m = z.len() as f64;
    let q = match kind {
        BaseFunction::Sphere => 1.0 + z.iter().map(|v| v * v).sum::<f64>(),
        BaseFunction::MeanAbs => 1.0 + 9.0 / m * z.iter().map(|v| math::abs(*v)).sum::<f64>(),
        BaseFunction::Rosenbrock => {
            debug_assert!(z.len() >= 2, "rosenbrock needs at least two variables");
            let mut acc = 1.0;
            for w in z.windows(2) {
                let d = w[0] * w[0] - w[1];
                acc += 100.0 * d * d + (1.0 - w[0]) * (1.0 - w[0]);
            }
            acc
        }
        BaseFunction::Ackley => {
            let sum_sq = z.iter().map(|v| v * v).sum::<f64>();
            let sum_cos = z.iter().map(|v| math::cos(2.0 * PI * v)).sum::<f64>();
            21.0 + E - 20.0 * math::exp(-0.2 * math::sqrt(sum_sq / m)) - math::exp(sum_cos / m)
        }
        BaseFunction::Rastrigin => {
            1.0 + z
                .iter()
                .map(|v| v * v - 10.0 * math::cos(2.0 * PI * v) + 10.0)
                .sum::<f64>()
        }
        BaseFunction::Griewank => {
            let sum_sq = z.iter().map(|v| v * v).sum::<f64>();
            let prod = z
                .iter()
                .enumerate()
                .map(|(j, v)| math::cos(v / math::sqrt((j + 1) as f64)))
                .product::<f64>();
            2.0 + sum_sq / 4000.0 - prod
        }
    };
    Ok(q)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvalError {
    NonFiniteInput,
    OutOfBounds,
    WrongDimension,
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::NonFiniteInput => write!(f, "non-finite input component"),
            EvalError::OutOfBounds => write!(f, "input outside the task's variable bounds"),
            EvalError::WrongDimension => write!(f, "input length does not match the task"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for EvalError {}

#[cfg(test)]
mod tests {
    use super::*;

    const KINDS: [BaseFunction; 6] = [
        BaseFunction::Sphere,
        BaseFunction::MeanAbs,
        BaseFunction::Rosenbrock,
        BaseFunction::Ackley,
        BaseFunction::Rastrigin,
        BaseFunction::Griewank,
    ];

    #[test]
    fn sphere_at_origin_is_one() {
        assert_eq!(base_q(BaseFunction::Sphere, &[0.0; 9]).unwrap(), 1.0);
    }

    #[test]
    fn rosenbrock_at_ones_is_one() {
        assert_eq!(base_q(BaseFunction::Rosenbrock, &[1.0; 9]).unwrap(), 1.0);
    }

    #[test]
    fn ackley_at_origin_is_one() {
        let q = base_q(BaseFunction::Ackley, &[0.0; 49]).unwrap();
        assert!((q - 1.0).abs() <= 1e-12, "ackley(0) = {q}");
    }

    #[test]
    fn rastrigin_unit_spike() {
        // 1 + (1 - 10 cos(2 pi) + 10) = 2
        let mut z = [0.0; 8];
        z[0] = 1.0;
        let q = base_q(BaseFunction::Rastrigin, &z).unwrap();
        assert!((q - 2.0).abs() <= 1e-12, "rastrigin spike = {q}");
    }

    #[test]
    fn every_kind_is_one_at_its_optimum() {
        for kind in KINDS {
            let z = kind.optimum(7);
            let q = base_q(kind, &z).unwrap();
            assert!((q - 1.0).abs() <= 1e-9, "{}: q(z*) = {q}", kind.name());
        }
    }

    #[test]
    fn every_kind_is_at_least_one_on_random_points() {
        let mut rng = crate::rng::rng_stream(11, 0);
        for kind in KINDS {
            for _ in 0..2_000 {
                let z: alloc::vec::Vec<f64> =
                    (0..6).map(|_| -3.0 + 6.0 * rng.next_f64()).collect();
                let q = base_q(kind, &z).unwrap();
                assert!(q >= 1.0 - 1e-12, "{}: q = {q} below floor", kind.name());
            }
        }
    }

    #[test]
    fn non_finite_input_is_rejected() {
        assert_eq!(
            base_q(BaseFunction::Sphere, &[f64::NAN, 0.0]),
            Err(EvalError::NonFiniteInput)
        );
    }
}
