//! Landscape floor: `q >= 1` everywhere in the box, `q = 1` at the
//! stated optimum, for every task of every problem.

use mtbench_core::problems::{BenchmarkProblem, ProblemId};
use mtbench_core::rng::rng_stream;

#[test]
fn q_is_floored_at_one_over_100k_random_points_per_task() {
    let mut rng = rng_stream(41, 0);
    for id in ProblemId::ALL {
        let p = BenchmarkProblem::generated(id, 2016);
        for (k, task) in p.tasks().iter().enumerate() {
            let n = task.n();
            let mut x = vec![0.0; n];
            let mut min_q = f64::INFINITY;
            for _ in 0..100_000 {
                for (v, (lo, hi)) in x
                    .iter_mut()
                    .zip(task.spec().lower().iter().zip(task.spec().upper()))
                {
                    *v = lo + (hi - lo) * rng.next_f64();
                }
                let q = task.q(&x).unwrap();
                min_q = min_q.min(q);
            }
            assert!(
                min_q >= 1.0 - 1e-12,
                "{id} T{}: sampled q floor {min_q}",
                k + 1
            );

            let mut opt = vec![0.5; task.frame().head_len()];
            opt.extend(task.tail_optimum());
            let q_opt = task.q(&opt).unwrap();
            assert!(
                (q_opt - 1.0).abs() <= 1e-9,
                "{id} T{}: q at the optimum is {q_opt}",
                k + 1
            );
        }
    }
}
