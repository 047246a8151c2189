//! The single-task baseline: canonical generational NSGA-II with binary
//! tournament selection, SBX + polynomial mutation, and (rank, crowding)
//! environmental selection.
//!
//! The ranking primitives here (dominance, fast nondominated sort,
//! crowding distance) are also the building blocks of the multifactorial
//! optimizer, which degenerates to this algorithm on a single task.

use alloc::vec;
use alloc::vec::Vec;

use crate::individual::Individual;
use crate::operators::{binary_tournament, init_population, sbx_crossover};
use crate::problems::TaskView;
use crate::rng::RunRng;
use crate::run::{ConfigError, CountingEvaluator, GenerationLog, RunConfig, RunOutput, TaskOutcome};
use crate::space::UnifiedVector;

/// Pareto dominance for minimization: `a` is no worse everywhere and
/// strictly better somewhere.
pub fn dominates(a: &[f64], b: &[f64]) -> bool {
    assert_eq!(a.len(), b.len(), "objective vectors must match in length");
    let mut strictly_better = false;
    for (x, y) in a.iter().zip(b) {
        if x > y {
            return false;
        }
        if x < y {
            strictly_better = true;
        }
    }
    strictly_better
}

/// Deb's fast nondominated sort: partitions indices into fronts, each
/// front being exactly the nondominated set once earlier fronts are
/// removed. Front vectors preserve input order.
pub fn fast_nondominated_sort(objs: &[Vec<f64>]) -> Vec<Vec<usize>> {
    let n = objs.len();
    assert!(n > 0, "cannot sort an empty set");
    let mut dominated: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut counts = vec![0u32; n];
    for i in 0..n {
        for j in (i + 1)..n {
            if dominates(&objs[i], &objs[j]) {
                dominated[i].push(j as u32);
                counts[j] += 1;
            } else if dominates(&objs[j], &objs[i]) {
                dominated[j].push(i as u32);
                counts[i] += 1;
            }
        }
    }
    let mut fronts = Vec::new();
    let mut current: Vec<usize> = (0..n).filter(|&i| counts[i] == 0).collect();
    while !current.is_empty() {
        let mut next = Vec::new();
        for &i in &current {
            for &j in &dominated[i] {
                counts[j as usize] -= 1;
                if counts[j as usize] == 0 {
                    next.push(j as usize);
                }
            }
        }
        // Discovery order depends on the dominance graph; keep fronts in
        // input order.
        next.sort_unstable();
        fronts.push(core::mem::take(&mut current));
        current = next;
    }
    fronts
}

/// Indices of the nondominated subset, in input order.
pub fn nondominated_indices(objs: &[Vec<f64>]) -> Vec<usize> {
    (0..objs.len())
        .filter(|&i| {
            objs.iter()
                .enumerate()
                .all(|(j, other)| j == i || !dominates(other, &objs[i]))
        })
        .collect()
}

/// Crowding distance of each point within one front. Boundary points of
/// every objective get infinity; interior points accumulate the span of
/// their neighbors normalized by the objective range, with zero-range
/// objectives contributing nothing.
pub fn crowding_distance(front: &[Vec<f64>]) -> Vec<f64> {
    let n = front.len();
    assert!(n > 0, "crowding of an empty front is undefined");
    let m = front[0].len();
    let mut distance = vec![0.0f64; n];
    if n <= 2 {
        return vec![f64::INFINITY; n];
    }
    let mut order: Vec<usize> = (0..n).collect();
    for d in 0..m {
        order.sort_by(|&a, &b| front[a][d].partial_cmp(&front[b][d]).expect("finite"));
        let lo = front[order[0]][d];
        let hi = front[order[n - 1]][d];
        distance[order[0]] = f64::INFINITY;
        distance[order[n - 1]] = f64::INFINITY;
        let range = hi - lo;
        if range <= 0.0 {
            continue;
        }
        for w in order.windows(3) {
            let (prev, mid, next) = (w[0], w[1], w[2]);
            distance[mid] += (front[next][d] - front[prev][d]) / range;
        }
    }
    distance
}

/// Front rank, crowding and the induced total order of a population.
#[derive(Clone, Debug)]
pub struct Ranking {
    /// 1-based front rank per individual.
    pub rank: Vec<usize>,
    pub crowding: Vec<f64>,
    /// Indices sorted by (rank ascending, crowding descending), stable.
    pub order: Vec<usize>,
    /// Position of each individual inside `order`.
    pub position: Vec<usize>,
}

/// Ranks a population's objective vectors.
pub fn rank_population(objs: &[Vec<f64>]) -> Ranking {
    let n = objs.len();
    let fronts = fast_nondominated_sort(objs);
    let mut rank = vec![0usize; n];
    let mut crowding = vec![0.0f64; n];
    let mut order = Vec::with_capacity(n);
    for (f, front) in fronts.iter().enumerate() {
        let front_objs: Vec<Vec<f64>> = front.iter().map(|&i| objs[i].clone()).collect();
        let local = crowding_distance(&front_objs);
        let mut members: Vec<usize> = (0..front.len()).collect();
        members.sort_by(|&a, &b| local[b].partial_cmp(&local[a]).expect("finite or inf"));
        for &local_idx in &members {
            order.push(front[local_idx]);
        }
        for (&i, &c) in front.iter().zip(&local) {
            rank[i] = f + 1;
            crowding[i] = c;
        }
    }
    let mut position = vec![0usize; n];
    for (pos, &i) in order.iter().enumerate() {
        position[i] = pos;
    }
    Ranking {
        rank,
        crowding,
        order,
        position,
    }
}

fn objectives_of(pop: &[Individual], task: usize) -> Vec<Vec<f64>> {
    pop.iter()
        .map(|ind| {
            ind.objectives[task]
                .clone()
                .expect("population is evaluated")
        })
        .collect()
}

pub(crate) fn front_outcome(
    pop: &[Individual],
    task: usize,
    members: &[usize],
) -> (Vec<Vec<f64>>, Vec<UnifiedVector>) {
    let objs: Vec<Vec<f64>> = members
        .iter()
        .map(|&i| pop[i].objectives[task].clone().expect("evaluated"))
        .collect();
    let keep = nondominated_indices(&objs);
    let front = keep.iter().map(|&k| objs[k].clone()).collect();
    let genotypes = keep
        .iter()
        .map(|&k| pop[members[k]].genotype.clone())
        .collect();
    (front, genotypes)
}

/// One NSGA-II run on a single task.
///
/// Generational loop: binary tournament on the (rank, crowding) order,
/// SBX and polynomial mutation into `pop_size` offspring, then selection
/// of the best `pop_size` from parents plus offspring. Every call of the
/// task's objective functions costs one evaluation; the loop stops when
/// another generation would exceed the budget.
pub fn nsga2_run(
    task: &TaskView<'_>,
    cfg: &RunConfig,
    igd_ref: Option<&crate::metrics::igd::IgdReference>,
    rng: &mut RunRng,
) -> Result<RunOutput, ConfigError> {
    cfg.validate(1)?;
    let tasks = [*task];
    let mut eval = CountingEvaluator::new(&tasks);
    let n = cfg.pop_size;

    let mut pop = init_population(n, task.unified_dim, 1, rng);
    for ind in &mut pop {
        let f = eval.evaluate(0, &ind.genotype).map_err(ConfigError::Eval)?;
        ind.objectives[0] = Some(f);
        ind.skill = Some(0);
    }
    let mut ranking = rank_population(&objectives_of(&pop, 0));

    let mut history = Vec::new();
    let mut generation: u32 = 0;
    log_igd(&pop, 0, igd_ref, generation, eval.evals(), &mut history);

    while eval.evals() + n as u64 <= cfg.budget {
        // Mating pool by tournament on the ranking's total order.
        let pool: Vec<usize> = (0..n)
            .map(|_| {
                binary_tournament(n, rng, |i, j| ranking.position[i].cmp(&ranking.position[j]))
                    .expect("population is nonempty")
            })
            .collect();

        let mut offspring = Vec::with_capacity(n);
        for pair in pool.chunks_exact(2) {
            let (g1, g2) = sbx_crossover(
                &pop[pair[0]].genotype,
                &pop[pair[1]].genotype,
                &cfg.params,
                rng,
            );
            for mut g in [g1, g2] {
                crate::operators::mutate_in_place(&mut g, &cfg.params, rng);
                let mut child = Individual::new(g, 1);
                let f = eval.evaluate(0, &child.genotype).map_err(ConfigError::Eval)?;
                child.objectives[0] = Some(f);
                child.skill = Some(0);
                offspring.push(child);
            }
        }

        pop.extend(offspring);
        let merged_ranking = rank_population(&objectives_of(&pop, 0));
        let mut next = Vec::with_capacity(n);
        for &i in merged_ranking.order.iter().take(n) {
            next.push(pop[i].clone());
        }
        pop = next;
        ranking = rank_population(&objectives_of(&pop, 0));
        generation += 1;
        log_igd(&pop, 0, igd_ref, generation, eval.evals(), &mut history);
    }

    let all: Vec<usize> = (0..pop.len()).collect();
    let (front, front_genotypes) = front_outcome(&pop, 0, &all);
    Ok(RunOutput {
        tasks: vec![TaskOutcome {
            front,
            front_genotypes,
            history,
        }],
        evals_used: eval.evals(),
        generations: generation,
        warnings: Vec::new(),
    })
}

pub(crate) fn log_igd(
    pop: &[Individual],
    task: usize,
    igd_ref: Option<&crate::metrics::igd::IgdReference>,
    generation: u32,
    evals: u64,
    history: &mut Vec<GenerationLog>,
) {
    let Some(reference) = igd_ref else {
        return;
    };
    let members: Vec<usize> = (0..pop.len())
        .filter(|&i| pop[i].skill == Some(task))
        .collect();
    if members.is_empty() {
        return;
    }
    let (front, _) = front_outcome(pop, task, &members);
    let front = crate::metrics::FrontSet::new(front).expect("nonempty front");
    let igd = reference.value(&front).expect("matching objective counts");
    history.push(GenerationLog {
        generation,
        evals,
        igd,
    });
}
