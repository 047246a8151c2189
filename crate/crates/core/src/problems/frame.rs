//! Objective frames: how a task turns its leading variables and the
//! landscape value `q` into an objective vector, and which analytic
//! Pareto front that frame traces when `q = 1`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::math;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Frame {
    /// `(q cos(pi x1 / 2), q sin(pi x1 / 2))`; front is the unit circle quadrant.
    CircleQuadrant,
    /// `(x1, q (1 - sqrt(x1 / q)))`; front is `f2 = 1 - sqrt(f1)`.
    ConvexSqrt,
    /// `(x1, q (1 - (x1 / q)^2))`; front is `f2 = 1 - f1^2`.
    ConcaveParabola,
    /// Three-objective trig frame over `x1, x2`; front is the unit sphere octant.
    SphereOctant,
    /// `((x1 + x2) / 2, q (1 - ((x1 + x2) / 2q)^2))`; front is `f2 = 1 - f1^2`.
    MeanParabola,
}

impl Frame {
    /// Number of leading variables consumed by the frame.
    pub fn head_len(&self) -> usize {
        match self {
            Frame::SphereOctant | Frame::MeanParabola => 2,
            _ => 1,
        }
    }

    pub fn objectives(&self) -> usize {
        match self {
            Frame::SphereOctant => 3,
            _ => 2,
        }
    }

    /// Assembles the objective vector from the head variables and `q`.
    pub fn assemble(&self, head: &[f64], q: f64) -> Vec<f64> {
        debug_assert_eq!(head.len(), self.head_len());
        match self {
            Frame::CircleQuadrant => {
                let theta = PI * head[0] / 2.0;
                vec![q * math::cos(theta), q * math::sin(theta)]
            }
            Frame::ConvexSqrt => {
                let f1 = head[0];
                vec![f1, q * (1.0 - math::sqrt(f1 / q))]
            }
            Frame::ConcaveParabola => {
                let f1 = head[0];
                let r = f1 / q;
                vec![f1, q * (1.0 - r * r)]
            }
            Frame::SphereOctant => {
                let a = PI * head[0] / 2.0;
                let b = PI * head[1] / 2.0;
                vec![
                    q * math::cos(a) * math::cos(b),
                    q * math::cos(a) * math::sin(b),
                    q * math::sin(a),
                ]
            }
            Frame::MeanParabola => {
                let f1 = 0.5 * (head[0] + head[1]);
                let r = f1 / q;
                vec![f1, q * (1.0 - r * r)]
            }
        }
    }

    /// Residual of the analytic Pareto-front equation at `f`, including
    /// any range/nonnegativity violation. Zero (to rounding) exactly on
    /// the stated front.
    pub fn pf_residual(&self, f: &[f64]) -> f64 {
        debug_assert_eq!(f.len(), self.objectives());
        let neg = f.iter().fold(0.0f64, |acc, v| acc.max(-*v));
        let eq = match self {
            Frame::CircleQuadrant => math::abs(f[0] * f[0] + f[1] * f[1] - 1.0),
            Frame::ConvexSqrt => {
                math::abs(f[1] - (1.0 - math::sqrt(f[0].max(0.0)))).max(f[0] - 1.0)
            }
            Frame::ConcaveParabola | Frame::MeanParabola => {
                math::abs(f[1] - (1.0 - f[0] * f[0])).max(f[0] - 1.0)
            }
            Frame::SphereOctant => math::abs(f[0] * f[0] + f[1] * f[1] + f[2] * f[2] - 1.0),
        };
        eq.max(neg).max(0.0)
    }
}
