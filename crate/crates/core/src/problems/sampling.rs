//! Pareto-set sampling and reference-front generation.
//!
//! Pareto-set samples draw the frame variables uniformly and pin the tail
//! at the task's `q` optimum. Reference fronts are deterministic: two-
//! objective fronts are spaced uniformly by arc length and always include
//! both endpoints; the three-objective sphere octant uses a seedless
//! golden-angle spiral, so the same front is reproduced on any machine.

use alloc::vec::Vec;
use core::f64::consts::PI;

use super::frame::Frame;
use super::BenchmarkProblem;
use crate::math;
use crate::metrics::FrontSet;
use crate::rng::RunRng;

/// Default reference-front size per objective count.
pub fn default_reference_size(objectives: usize) -> usize {
    if objectives >= 3 {
        10_000
    } else {
        5_000
    }
}

/// Draws `count` task-space points on the stated Pareto set.
pub fn pareto_set_sample(
    problem: &BenchmarkProblem,
    task_index: usize,
    count: usize,
    rng: &mut RunRng,
) -> Vec<Vec<f64>> {
    let task = problem.task(task_index);
    let head = task.frame().head_len();
    let tail = task.tail_optimum();
    (0..count)
        .map(|_| {
            let mut x = Vec::with_capacity(task.n());
            for _ in 0..head {
                x.push(rng.next_f64());
            }
            x.extend_from_slice(&tail);
            x
        })
        .collect()
}

/// `size` points on the task's analytic Pareto front.
pub fn reference_front(problem: &BenchmarkProblem, task_index: usize, size: usize) -> FrontSet {
    assert!(size >= 2, "a reference front needs at least two points");
    let frame = problem.task(task_index).frame();
    let points = match frame {
        Frame::CircleQuadrant => (0..size)
            .map(|j| {
                let theta = PI / 2.0 * j as f64 / (size - 1) as f64;
                alloc::vec![math::cos(theta), math::sin(theta)]
            })
            .collect(),
        // (u^2, 1 - u): the substitution removes the infinite slope of
        // f2 = 1 - sqrt(f1) at the origin before resampling.
        Frame::ConvexSqrt => arc_length_resample(|u| (u * u, 1.0 - u), size),
        Frame::ConcaveParabola | Frame::MeanParabola => {
            arc_length_resample(|t| (t, 1.0 - t * t), size)
        }
        Frame::SphereOctant => octant_spiral(size),
    };
    FrontSet::new(points).expect("analytic fronts are nonempty and consistent")
}

/// Resamples a smooth curve over `[0, 1]` at `size` arc-length-uniform
/// parameters, endpoints included exactly.
fn arc_length_resample(curve: impl Fn(f64) -> (f64, f64), size: usize) -> Vec<Vec<f64>> {
    const SEGMENTS: usize = 65_536;
    let mut cumulative = Vec::with_capacity(SEGMENTS + 1);
    cumulative.push(0.0f64);
    let mut prev = curve(0.0);
    for i in 1..=SEGMENTS {
        let t = i as f64 / SEGMENTS as f64;
        let p = curve(t);
        let (dx, dy) = (p.0 - prev.0, p.1 - prev.1);
        cumulative.push(cumulative[i - 1] + math::sqrt(dx * dx + dy * dy));
        prev = p;
    }
    let total = *cumulative.last().unwrap();
    (0..size)
        .map(|j| {
            let t = if j == 0 {
                0.0
            } else if j == size - 1 {
                1.0
            } else {
                let target = total * j as f64 / (size - 1) as f64;
                let seg = cumulative.partition_point(|&s| s < target).max(1) - 1;
                let span = cumulative[seg + 1] - cumulative[seg];
                let frac = if span > 0.0 {
                    (target - cumulative[seg]) / span
                } else {
                    0.0
                };
                (seg as f64 + frac) / SEGMENTS as f64
            };
            let (f1, f2) = curve(t);
            alloc::vec![f1, f2]
        })
        .collect()
}

/// Golden-angle spiral on the unit-sphere octant, uniform in area.
fn octant_spiral(size: usize) -> Vec<Vec<f64>> {
    const GOLDEN: f64 = 0.618_033_988_749_894_9;
    (0..size)
        .map(|k| {
            let z = (k as f64 + 0.5) / size as f64;
            let frac = (k as f64 * GOLDEN) % 1.0;
            let theta = PI / 2.0 * frac;
            let r = math::sqrt((1.0 - z * z).max(0.0));
            alloc::vec![r * math::cos(theta), r * math::sin(theta), z]
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::ProblemId;

    #[test]
    fn circle_front_of_three_is_the_quarter_arc() {
        let p = BenchmarkProblem::generated(ProblemId::Cihs, 1);
        let front = reference_front(&p, 0, 3);
        let pts = front.points();
        let s = math::sqrt(2.0) / 2.0;
        assert!((pts[0][0] - 1.0).abs() < 1e-15 && pts[0][1].abs() < 1e-15);
        assert!((pts[1][0] - s).abs() < 1e-12 && (pts[1][1] - s).abs() < 1e-12);
        assert!(pts[2][0].abs() < 1e-15 && (pts[2][1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn convex_front_includes_both_endpoints() {
        let p = BenchmarkProblem::generated(ProblemId::Pihs, 1);
        let front = reference_front(&p, 0, 101);
        let pts = front.points();
        assert_eq!(pts[0], alloc::vec![0.0, 1.0]);
        assert_eq!(pts[100], alloc::vec![1.0, 0.0]);
    }

    #[test]
    fn every_front_point_satisfies_its_equation() {
        for id in ProblemId::ALL {
            let p = BenchmarkProblem::generated(id, 1);
            for k in 0..2 {
                let frame = p.task(k).frame();
                let front = reference_front(&p, k, 257);
                for f in front.points() {
                    assert!(frame.pf_residual(f) <= 1e-12, "{id} T{}: {f:?}", k + 1);
                }
            }
        }
    }

    #[test]
    fn two_objective_fronts_are_evenly_spaced() {
        let p = BenchmarkProblem::generated(ProblemId::Cihs, 1);
        for task in 0..2 {
            let front = reference_front(&p, task, 200);
            let pts = front.points();
            let gaps: Vec<f64> = pts
                .windows(2)
                .map(|w| {
                    let dx = w[1][0] - w[0][0];
                    let dy = w[1][1] - w[0][1];
                    math::sqrt(dx * dx + dy * dy)
                })
                .collect();
            let mean = gaps.iter().sum::<f64>() / gaps.len() as f64;
            for g in &gaps {
                assert!(
                    (g - mean).abs() / mean < 0.02,
                    "task {task}: gap {g} vs mean {mean}"
                );
            }
        }
    }

    #[test]
    fn pareto_samples_evaluate_onto_the_front() {
        let mut rng = crate::rng::rng_stream(3, 0);
        for id in ProblemId::ALL {
            let p = BenchmarkProblem::generated(id, 7);
            for k in 0..2 {
                let frame = p.task(k).frame();
                for x in pareto_set_sample(&p, k, 64, &mut rng) {
                    let f = p.task(k).evaluate(&x).unwrap();
                    assert!(frame.pf_residual(&f) <= 1e-9, "{id} T{}: {f:?}", k + 1);
                }
            }
        }
    }

    #[test]
    fn cihs_samples_pin_the_tail_at_zero() {
        let mut rng = crate::rng::rng_stream(4, 0);
        let p = BenchmarkProblem::generated(ProblemId::Cihs, 7);
        for x in pareto_set_sample(&p, 0, 3, &mut rng) {
            assert!(x[1..].iter().all(|&v| v == 0.0));
            assert!((0.0..=1.0).contains(&x[0]));
        }
    }

    #[test]
    fn cims_t2_samples_sit_on_the_shift() {
        let mut rng = crate::rng::rng_stream(4, 0);
        let p = BenchmarkProblem::generated(ProblemId::Cims, 7);
        let shift = p.task(1).data().shift.clone().unwrap();
        for x in pareto_set_sample(&p, 1, 5, &mut rng) {
            assert_eq!(&x[1..], &shift[..]);
        }
    }

    #[test]
    fn reference_fronts_are_mutually_nondominated() {
        for id in [ProblemId::Cihs, ProblemId::Nims] {
            let p = BenchmarkProblem::generated(id, 1);
            for k in 0..2 {
                let front = reference_front(&p, k, 300);
                assert!(front.is_mutually_nondominated(), "{id} T{}", k + 1);
            }
        }
    }
}
