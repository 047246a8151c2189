//! Population members shared by both optimizers.

use alloc::vec;
use alloc::vec::Vec;

use crate::space::UnifiedVector;

/// One member of the evolving population.
///
/// `objectives[k]` is set only once the individual has been evaluated on
/// task `k`; after multifactorial skill assignment exactly the skill
/// task's slot stays populated. `scalar_fitness` is `1 / factorial rank`,
/// so it lies in `(0, 1]` whenever set.
#[derive(Clone, Debug)]
pub struct Individual {
    pub genotype: UnifiedVector,
    pub skill: Option<usize>,
    pub objectives: Vec<Option<Vec<f64>>>,
    pub scalar_fitness: Option<f64>,
}

impl Individual {
    pub fn new(genotype: UnifiedVector, task_count: usize) -> Self {
        Self {
            genotype,
            skill: None,
            objectives: vec![None; task_count],
            scalar_fitness: None,
        }
    }

    /// Objective vector on the individual's skill task.
    pub fn skill_objectives(&self) -> Option<&[f64]> {
        let skill = self.skill?;
        self.objectives[skill].as_deref()
    }

    /// Drops every objective vector except the skill task's.
    pub fn retain_skill_objectives(&mut self) {
        let skill = self.skill;
        for (k, slot) in self.objectives.iter_mut().enumerate() {
            if Some(k) != skill {
                *slot = None;
            }
        }
    }
}
