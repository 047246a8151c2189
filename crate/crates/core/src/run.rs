//! Run plumbing shared by both optimizers: configuration, evaluation
//! accounting, per-generation traces and final per-task outcomes.

use alloc::vec::Vec;
use core::fmt;

use crate::metrics::igd::IgdReference;
use crate::operators::OperatorParams;
use crate::problems::{EvalError, TaskView};
use crate::space::UnifiedVector;

/// Budget and operator settings for one optimizer run.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub pop_size: usize,
    /// Maximum number of single-task objective evaluations.
    pub budget: u64,
    pub params: OperatorParams,
}

impl RunConfig {
    pub fn validate(&self, task_count: usize) -> Result<(), ConfigError> {
        if self.pop_size < 2 || self.pop_size % 2 != 0 {
            return Err(ConfigError::BadPopulationSize {
                pop_size: self.pop_size,
            });
        }
        let init_cost = self.pop_size as u64 * task_count as u64;
        if self.budget < init_cost {
            return Err(ConfigError::BudgetBelowInitialization {
                budget: self.budget,
                needed: init_cost,
            });
        }
        self.params.validate().map_err(ConfigError::BadParams)
    }
}

/// One logged generation: the evaluation counter after the generation and
/// the IGD of the population's task front against the reference front.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GenerationLog {
    pub generation: u32,
    pub evals: u64,
    pub igd: f64,
}

/// Final state of one task after a run.
#[derive(Clone, Debug)]
pub struct TaskOutcome {
    /// Mutually nondominated objective vectors of the final population.
    pub front: Vec<Vec<f64>>,
    /// Genotypes matching `front`, in the same order.
    pub front_genotypes: Vec<UnifiedVector>,
    /// Per-generation IGD trace; empty when no reference front was given.
    pub history: Vec<GenerationLog>,
}

/// Everything a run reports back to the harness.
#[derive(Clone, Debug)]
pub struct RunOutput {
    pub tasks: Vec<TaskOutcome>,
    pub evals_used: u64,
    pub generations: u32,
    pub warnings: Vec<RunWarning>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RunWarning {
    /// A skill group died out in the given generation; the run went on,
    /// but the affected task stopped receiving search effort.
    SkillGroupEmpty { generation: u32, task: usize },
}

impl fmt::Display for RunWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunWarning::SkillGroupEmpty { generation, task } => write!(
                f,
                "skill group for task {task} empty after generation {generation}"
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ConfigError {
    BadPopulationSize { pop_size: usize },
    BudgetBelowInitialization { budget: u64, needed: u64 },
    BadParams(crate::operators::ParamError),
    NoTasks,
    Eval(EvalError),
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::BadPopulationSize { pop_size } => {
                write!(f, "population size {pop_size} must be even and at least 2")
            }
            ConfigError::BudgetBelowInitialization { budget, needed } => write!(
                f,
                "budget {budget} cannot cover the {needed} evaluations of initialization"
            ),
            ConfigError::BadParams(e) => write!(f, "bad operator parameters: {e}"),
            ConfigError::NoTasks => write!(f, "at least one task is required"),
            ConfigError::Eval(e) => write!(f, "evaluation failed: {e}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ConfigError {}

/// Wraps the tasks of a run and counts every objective-function call.
///
/// "One evaluation" is one computation of a single task's objective
/// vector; calls on different tasks all tick the same counter.
pub(crate) struct CountingEvaluator<'a> {
    tasks: &'a [TaskView<'a>],
    evals: u64,
}

impl<'a> CountingEvaluator<'a> {
    pub(crate) fn new(tasks: &'a [TaskView<'a>]) -> Self {
        Self { tasks, evals: 0 }
    }

    pub(crate) fn evaluate(
        &mut self,
        task: usize,
        genotype: &UnifiedVector,
    ) -> Result<Vec<f64>, EvalError> {
        self.evals += 1;
        self.tasks[task].evaluate_unified(genotype)
    }

    pub(crate) fn evals(&self) -> u64 {
        self.evals
    }
}

/// Per-task IGD references handed to a run for history logging.
pub type IgdRefs<'a> = &'a [Option<&'a IgdReference>];
