//! Execution of the experiment protocol: one job per (problem,
//! algorithm, run index), dispatched to a bounded worker pool. Each job
//! owns its random stream, so results are independent of scheduling, and
//! records are written in plan order after all workers finish.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use mtbench_core::metrics::{truncate_front, FrontSet};
use mtbench_core::momfea::momfea_run;
use mtbench_core::nsga2::nsga2_run;
use mtbench_core::problems::BenchmarkProblem;
use mtbench_core::rng::{derive_seed, rng_stream};
use mtbench_core::run::RunConfig;

use crate::assets::assemble_problem;
use crate::config::{Algorithm, ExperimentConfig};
use crate::pstar::{reference_bundle, ReferenceBundle};
use crate::records::{RunRecord, TaskRecord, SCHEMA_VERSION};

/// Caps applied to final fronts before recording, per objective count.
pub fn front_cap(objectives: usize) -> usize {
    if objectives >= 3 {
        120
    } else {
        100
    }
}

/// Algorithm discriminants mixed into stream-seed derivation.
fn algo_label(a: Algorithm) -> u64 {
    match a {
        Algorithm::Nsga2 => 1,
        Algorithm::Momfea => 2,
    }
}

struct ProblemBundle {
    problem: BenchmarkProblem,
    references: Vec<ReferenceBundle>,
}

#[derive(Clone, Copy)]
struct Job {
    problem_slot: usize,
    algorithm: Algorithm,
    run_index: usize,
}

/// One finished run plus its wall time (reported separately; never part
/// of the record bytes).
pub struct TimedRecord {
    pub record: RunRecord,
    pub wall: Duration,
}

/// Runs the whole configured protocol. Records come back in plan order:
/// problems in config order, algorithms in config order, run index.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<TimedRecord>, String> {
    config.validate()?;
    let data_provenance = match &config.data_dir {
        Some(dir) => format!("official:{}", dir.display()),
        None => format!("generated:{}", config.data_seed),
    };

    let mut bundles = Vec::with_capacity(config.problems.len());
    for &id in &config.problems {
        let problem = assemble_problem(id, config.data_dir.as_deref(), config.data_seed)
            .map_err(|e| e.to_string())?;
        let references = (0..2)
            .map(|k| reference_bundle(&problem, k, config.ref_size(problem.task(k).objectives())))
            .collect();
        bundles.push(Arc::new(ProblemBundle {
            problem,
            references,
        }));
    }

    let mut jobs = Vec::new();
    for (slot, _) in bundles.iter().enumerate() {
        for &algorithm in &config.algorithms {
            for run_index in 0..config.runs {
                jobs.push(Job {
                    problem_slot: slot,
                    algorithm,
                    run_index,
                });
            }
        }
    }

    let workers = config
        .threads
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        })
        .clamp(1, jobs.len().max(1));

    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<Result<TimedRecord, String>>>> =
        Mutex::new((0..jobs.len()).map(|_| None).collect());

    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= jobs.len() {
                    break;
                }
                let job = jobs[i];
                let outcome = execute_job(config, &bundles[job.problem_slot], job, &data_provenance);
                results.lock().unwrap()[i] = Some(outcome);
            });
        }
    });

    results
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|slot| slot.expect("every job ran"))
        .collect()
}

fn execute_job(
    config: &ExperimentConfig,
    bundle: &ProblemBundle,
    job: Job,
    data_provenance: &str,
) -> Result<TimedRecord, String> {
    let problem = &bundle.problem;
    let problem_idx = problem.id() as u64;
    let params = config.params_for(problem.unified_dim());
    let started = Instant::now();

    let mut stream_seeds = Vec::new();
    let mut evals = Vec::new();
    let mut tasks = Vec::new();
    let mut warnings = Vec::new();
    let mut rmp = None;

    match job.algorithm {
        Algorithm::Nsga2 => {
            let cfg = RunConfig {
                pop_size: config.nsga2_pop,
                budget: config.budget / 2,
                params,
            };
            for k in 0..2 {
                let seed = derive_seed(
                    config.master_seed,
                    &[algo_label(job.algorithm), problem_idx, k as u64],
                );
                let mut rng = rng_stream(seed, job.run_index as u64);
                let out = nsga2_run(
                    &problem.task_view(k),
                    &cfg,
                    Some(&bundle.references[k].evaluator),
                    &mut rng,
                )
                .map_err(|e| format!("{} nsga2 T{}: {e}", problem.id(), k + 1))?;
                stream_seeds.push(seed);
                evals.push(out.evals_used);
                tasks.push(task_record(bundle, k, &out.tasks[0]));
                warnings.extend(out.warnings.iter().map(|w| w.to_string()));
            }
        }
        Algorithm::Momfea => {
            let cfg = RunConfig {
                pop_size: config.momfea_pop,
                budget: config.budget,
                params,
            };
            let seed = derive_seed(config.master_seed, &[algo_label(job.algorithm), problem_idx]);
            let mut rng = rng_stream(seed, job.run_index as u64);
            let views = [problem.task_view(0), problem.task_view(1)];
            let refs = [
                Some(&bundle.references[0].evaluator),
                Some(&bundle.references[1].evaluator),
            ];
            let out = momfea_run(&views, &cfg, config.rmp, &refs, &mut rng)
                .map_err(|e| format!("{} momfea: {e}", problem.id()))?;
            stream_seeds.push(seed);
            evals.push(out.evals_used);
            for k in 0..2 {
                tasks.push(task_record(bundle, k, &out.tasks[k]));
            }
            warnings.extend(out.warnings.iter().map(|w| w.to_string()));
            rmp = Some(config.rmp);
        }
    }

    let pop_size = match job.algorithm {
        Algorithm::Nsga2 => config.nsga2_pop,
        Algorithm::Momfea => config.momfea_pop,
    };
    Ok(TimedRecord {
        record: RunRecord {
            schema_version: SCHEMA_VERSION,
            problem: problem.id().as_str().to_string(),
            algorithm: job.algorithm.as_str().to_string(),
            run_index: job.run_index,
            master_seed: config.master_seed,
            stream_seeds,
            evals,
            budget: config.budget,
            pop_size,
            pc: params.pc,
            pm: params.pm,
            eta_c: params.eta_c,
            eta_m: params.eta_m,
            rmp,
            data_provenance: data_provenance.to_string(),
            tasks,
            warnings,
        },
        wall: started.elapsed(),
    })
}

fn task_record(
    bundle: &ProblemBundle,
    task_index: usize,
    outcome: &mtbench_core::run::TaskOutcome,
) -> TaskRecord {
    let reference = &bundle.references[task_index];
    let objectives = bundle.problem.task(task_index).objectives();
    let (front, final_igd) = if outcome.front.is_empty() {
        (Vec::new(), f64::INFINITY)
    } else {
        let full = FrontSet::new(outcome.front.clone()).expect("nonempty front");
        let capped = truncate_front(&full, front_cap(objectives));
        let igd = reference
            .evaluator
            .value(&capped)
            .expect("front and reference share objective counts");
        (capped.into_points(), igd)
    };
    TaskRecord {
        task: task_index + 1,
        pstar_size: reference.size,
        pstar_hash: reference.hash.clone(),
        final_igd,
        front,
        history: outcome
            .history
            .iter()
            .map(|h| (h.generation, h.evals, h.igd))
            .collect(),
    }
}

/// Runs the protocol and persists everything under `out_dir`: records in
/// `records/`, wall times in `meta/timings.csv`.
pub fn run_and_persist(config: &ExperimentConfig) -> Result<Vec<std::path::PathBuf>, String> {
    let timed = run_experiment(config)?;
    let records_dir = config.out_dir.join("records");
    let mut written = Vec::new();
    let mut timings = String::from("problem,algorithm,run_index,wall_ms\n");
    for t in &timed {
        let path = t
            .record
            .write_into(&records_dir)
            .map_err(|e| format!("writing record: {e}"))?;
        timings.push_str(&format!(
            "{},{},{},{}\n",
            t.record.problem,
            t.record.algorithm,
            t.record.run_index,
            t.wall.as_millis()
        ));
        written.push(path);
    }
    let meta_dir = config.out_dir.join("meta");
    std::fs::create_dir_all(&meta_dir).map_err(|e| e.to_string())?;
    std::fs::write(meta_dir.join("timings.csv"), timings).map_err(|e| e.to_string())?;
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;
    use mtbench_core::problems::ProblemId;

    fn tiny_config(out: &str) -> ExperimentConfig {
        let mut c = ExperimentConfig::default();
        c.problems = vec![ProblemId::Cims];
        c.runs = 2;
        c.budget = 4000;
        c.nsga2_pop = 20;
        c.momfea_pop = 40;
        c.ref_size_2obj = 300;
        c.ref_size_3obj = 400;
        c.out_dir = std::env::temp_dir().join(out);
        c.threads = Some(2);
        c
    }

    #[test]
    fn cardinality_and_budget_accounting() {
        let config = tiny_config("mtbench-runner-card");
        let timed = run_experiment(&config).unwrap();
        let records: Vec<_> = timed.into_iter().map(|t| t.record).collect();
        // 1 problem x 2 algorithms x 2 runs, one record per algorithm run.
        assert_eq!(records.len(), 4);
        for r in &records {
            assert_eq!(r.tasks.len(), 2);
            match r.algorithm.as_str() {
                "nsga2" => {
                    assert_eq!(r.evals.len(), 2);
                    for &e in &r.evals {
                        assert!(e <= 2000 && e > 2000 - 20, "evals {e}");
                    }
                }
                "momfea" => {
                    assert_eq!(r.evals.len(), 1);
                    assert!(r.evals[0] <= 4000 && r.evals[0] > 4000 - 40);
                }
                other => panic!("unexpected algorithm {other}"),
            }
            for t in &r.tasks {
                assert!(t.front.len() <= front_cap(2));
                assert!(t.final_igd.is_finite());
            }
        }
    }

    #[test]
    fn reruns_are_byte_identical() {
        let config = tiny_config("mtbench-runner-det");
        let a: Vec<String> = run_experiment(&config)
            .unwrap()
            .iter()
            .map(|t| t.record.to_json())
            .collect();
        let b: Vec<String> = run_experiment(&config)
            .unwrap()
            .iter()
            .map(|t| t.record.to_json())
            .collect();
        assert_eq!(a, b);
    }
}
