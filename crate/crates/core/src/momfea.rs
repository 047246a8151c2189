//! The multitasking baseline: a single population whose individuals each
//! carry one skill factor, ranked within their skill group and recombined
//! by assortative mating. With one task the algorithm reproduces NSGA-II
//! draw for draw, which the test suite checks bit-exactly.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::individual::Individual;
use crate::metrics::igd::IgdReference;
use crate::nsga2::{front_outcome, log_igd, rank_population};
use crate::operators::{binary_tournament, init_population, sbx_crossover, OperatorParams};
use crate::problems::TaskView;
use crate::rng::RunRng;
use crate::run::{ConfigError, CountingEvaluator, RunConfig, RunOutput, RunWarning, TaskOutcome};
use crate::space::UnifiedVector;

/// Default random mating probability.
pub const DEFAULT_RMP: f64 = 0.3;

/// Evaluates everyone on every task, then gives each individual the task
/// where its within-task nondomination rank is best (ties uniform at
/// random) and drops the other tasks' objectives.
///
/// Costs `pop.len() * tasks.len()` evaluations on the shared counter.
pub(crate) fn assign_initial_skill_factors(
    pop: &mut [Individual],
    eval: &mut CountingEvaluator<'_>,
    task_count: usize,
    rng: &mut RunRng,
) -> Result<(), ConfigError> {
    for ind in pop.iter_mut() {
        for k in 0..task_count {
            let f = eval.evaluate(k, &ind.genotype).map_err(ConfigError::Eval)?;
            ind.objectives[k] = Some(f);
        }
    }
    let mut ranks = vec![vec![0usize; pop.len()]; task_count];
    for (k, rank_row) in ranks.iter_mut().enumerate() {
        let objs: Vec<Vec<f64>> = pop
            .iter()
            .map(|ind| ind.objectives[k].clone().expect("just evaluated"))
            .collect();
        let ranking = rank_population(&objs);
        rank_row.copy_from_slice(&ranking.rank);
    }
    for (i, ind) in pop.iter_mut().enumerate() {
        let best = (0..task_count).map(|k| ranks[k][i]).min().expect("tasks");
        let candidates: Vec<usize> = (0..task_count).filter(|&k| ranks[k][i] == best).collect();
        let skill = if candidates.len() == 1 {
            candidates[0]
        } else {
            candidates[rng.below(candidates.len())]
        };
        ind.skill = Some(skill);
        ind.retain_skill_objectives();
    }
    Ok(())
}

/// Ranks each skill group by (front, crowding) and assigns
/// `scalar_fitness = 1 / factorial rank`. Empty groups are skipped.
pub(crate) fn factorial_rank_and_scalar_fitness(pop: &mut [Individual], task_count: usize) {
    for k in 0..task_count {
        let members: Vec<usize> = (0..pop.len())
            .filter(|&i| pop[i].skill == Some(k))
            .collect();
        if members.is_empty() {
            continue;
        }
        let objs: Vec<Vec<f64>> = members
            .iter()
            .map(|&i| pop[i].objectives[k].clone().expect("skill objectives set"))
            .collect();
        let ranking = rank_population(&objs);
        for (pos, &local) in ranking.order.iter().enumerate() {
            pop[members[local]].scalar_fitness = Some(1.0 / (pos + 1) as f64);
        }
    }
}

/// Assortative mating of one parent pair.
///
/// Same skill: SBX always (the operator's own `pc` gate still applies)
/// and the children inherit that skill. Different skills: with
/// probability `rmp` the pair crosses and each child inherits a uniformly
/// chosen parent's skill; otherwise each parent is mutated alone and the
/// child keeps its sole parent's skill. Crossover children are also
/// mutated per `pm`.
pub(crate) fn assortative_mating(
    pa: &Individual,
    pb: &Individual,
    rmp: f64,
    params: &OperatorParams,
    task_count: usize,
    rng: &mut RunRng,
) -> (Individual, Individual) {
    let sa = pa.skill.expect("parents carry skill factors");
    let sb = pb.skill.expect("parents carry skill factors");

    let (g1, g2, s1, s2) = if sa == sb {
        let (g1, g2) = sbx_crossover(&pa.genotype, &pb.genotype, params, rng);
        (g1, g2, sa, sb)
    } else if rng.next_f64() < rmp {
        let (g1, g2) = sbx_crossover(&pa.genotype, &pb.genotype, params, rng);
        let s1 = if rng.next_f64() < 0.5 { sa } else { sb };
        let s2 = if rng.next_f64() < 0.5 { sa } else { sb };
        (g1, g2, s1, s2)
    } else {
        (pa.genotype.clone(), pb.genotype.clone(), sa, sb)
    };

    let mut make = |g: UnifiedVector, skill: usize| {
        let mut g = g;
        crate::operators::mutate_in_place(&mut g, params, rng);
        let mut child = Individual::new(g, task_count);
        child.skill = Some(skill);
        child
    };
    let c1 = make(g1, s1);
    let c2 = make(g2, s2);
    (c1, c2)
}

fn scalar_fitness_cmp(pop: &[Individual], i: usize, j: usize) -> Ordering {
    let fi = pop[i].scalar_fitness.expect("fitness assigned");
    let fj = pop[j].scalar_fitness.expect("fitness assigned");
    // Higher fitness ranks earlier.
    fj.partial_cmp(&fi).expect("fitness is finite")
}

/// One MO-MFEA run over the tasks of a problem (usually two; one task
/// degenerates to NSGA-II).
///
/// Generational loop: tournament on scalar fitness, assortative mating
/// into `pop_size` offspring, each evaluated only on its inherited skill
/// task, then survival of the best `pop_size` of parents plus offspring
/// by scalar fitness recomputed on the merged per-task groups.
pub fn momfea_run(
    tasks: &[TaskView<'_>],
    cfg: &RunConfig,
    rmp: f64,
    igd_refs: &[Option<&IgdReference>],
    rng: &mut RunRng,
) -> Result<RunOutput, ConfigError> {
    let task_count = tasks.len();
    if task_count == 0 {
        return Err(ConfigError::NoTasks);
    }
    assert_eq!(igd_refs.len(), task_count);
    cfg.validate(task_count)?;
    let dim = tasks[0].unified_dim;
    debug_assert!(tasks.iter().all(|t| t.unified_dim == dim));

    let mut eval = CountingEvaluator::new(tasks);
    let n = cfg.pop_size;

    let mut pop = init_population(n, dim, task_count, rng);
    assign_initial_skill_factors(&mut pop, &mut eval, task_count, rng)?;
    factorial_rank_and_scalar_fitness(&mut pop, task_count);

    let mut histories: Vec<Vec<crate::run::GenerationLog>> = vec![Vec::new(); task_count];
    let mut warnings = Vec::new();
    let mut generation: u32 = 0;
    for k in 0..task_count {
        log_igd(&pop, k, igd_refs[k], generation, eval.evals(), &mut histories[k]);
    }

    while eval.evals() + n as u64 <= cfg.budget {
        let pool: Vec<usize> = (0..n)
            .map(|_| {
                binary_tournament(n, rng, |i, j| scalar_fitness_cmp(&pop, i, j))
                    .expect("population is nonempty")
            })
            .collect();

        let mut offspring = Vec::with_capacity(n);
        for pair in pool.chunks_exact(2) {
            let (mut c1, mut c2) =
                assortative_mating(&pop[pair[0]], &pop[pair[1]], rmp, &cfg.params, task_count, rng);
            for child in [&mut c1, &mut c2] {
                let k = child.skill.expect("children inherit a skill");
                let f = eval.evaluate(k, &child.genotype).map_err(ConfigError::Eval)?;
                child.objectives[k] = Some(f);
            }
            offspring.push(c1);
            offspring.push(c2);
        }

        pop.extend(offspring);
        factorial_rank_and_scalar_fitness(&mut pop, task_count);
        let mut order: Vec<usize> = (0..pop.len()).collect();
        order.sort_by(|&i, &j| scalar_fitness_cmp(&pop, i, j));
        let mut next = Vec::with_capacity(n);
        for &i in order.iter().take(n) {
            next.push(pop[i].clone());
        }
        pop = next;
        factorial_rank_and_scalar_fitness(&mut pop, task_count);
        generation += 1;

        for k in 0..task_count {
            if !pop.iter().any(|ind| ind.skill == Some(k)) {
                warnings.push(RunWarning::SkillGroupEmpty {
                    generation,
                    task: k,
                });
                continue;
            }
            log_igd(&pop, k, igd_refs[k], generation, eval.evals(), &mut histories[k]);
        }
    }

    let mut outcomes = Vec::with_capacity(task_count);
    for (k, history) in histories.into_iter().enumerate() {
        let members: Vec<usize> = (0..pop.len())
            .filter(|&i| pop[i].skill == Some(k))
            .collect();
        let (front, front_genotypes) = if members.is_empty() {
            (Vec::new(), Vec::new())
        } else {
            front_outcome(&pop, k, &members)
        };
        outcomes.push(TaskOutcome {
            front,
            front_genotypes,
            history,
        });
    }
    Ok(RunOutput {
        tasks: outcomes,
        evals_used: eval.evals(),
        generations: generation,
        warnings,
    })
}
