//! The nine two-task benchmark problems.
//!
//! Each problem pairs two continuous multiobjective minimization tasks.
//! A task is an objective frame over one or two leading variables plus a
//! landscape function `q` over the remaining tail, optionally behind a
//! shift/rotation transform. The Pareto set of every task is exactly the
//! set of points with `q = 1`, which makes the analytic fronts checkable.
//!
//! Problems are named by the intersection of the two tasks' `q` optima in
//! the normalized space (complete / partial / no) crossed with the
//! documented landscape similarity (high / medium / low): CIHS, CIMS,
//! CILS, PIHS, PIMS, PILS, NIHS, NIMS, NILS.

pub mod base;
pub mod data;
pub mod frame;
pub mod sampling;
pub mod transform;

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

pub use base::{base_q, BaseFunction, EvalError};
pub use data::{AssetId, AssetPayload, DataError};
pub use frame::Frame;
pub use transform::{apply_transform, Provenance, SquareMatrix, TaskData};

use crate::space::{decode_into, SpaceError, TaskSpec, UnifiedVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProblemId {
    Cihs,
    Cims,
    Cils,
    Pihs,
    Pims,
    Pils,
    Nihs,
    Nims,
    Nils,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Intersection {
    Complete,
    Partial,
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SimilarityBand {
    High,
    Medium,
    Low,
}

impl SimilarityBand {
    /// Band of a similarity coefficient: high above 2/3, medium above
    /// 1/3, low otherwise.
    pub fn of(rho: f64) -> Self {
        if rho > 2.0 / 3.0 {
            SimilarityBand::High
        } else if rho > 1.0 / 3.0 {
            SimilarityBand::Medium
        } else {
            SimilarityBand::Low
        }
    }
}

impl ProblemId {
    pub const ALL: [ProblemId; 9] = [
        ProblemId::Cihs,
        ProblemId::Cims,
        ProblemId::Cils,
        ProblemId::Pihs,
        ProblemId::Pims,
        ProblemId::Pils,
        ProblemId::Nihs,
        ProblemId::Nims,
        ProblemId::Nils,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ProblemId::Cihs => "CIHS",
            ProblemId::Cims => "CIMS",
            ProblemId::Cils => "CILS",
            ProblemId::Pihs => "PIHS",
            ProblemId::Pims => "PIMS",
            ProblemId::Pils => "PILS",
            ProblemId::Nihs => "NIHS",
            ProblemId::Nims => "NIMS",
            ProblemId::Nils => "NILS",
        }
    }

    pub fn from_str(s: &str) -> Option<Self> {
        let upper = s.trim();
        Self::ALL
            .iter()
            .copied()
            .find(|p| p.as_str().eq_ignore_ascii_case(upper))
    }

    /// Landscape similarity coefficient documented for the official data.
    pub fn documented_similarity(&self) -> f64 {
        match self {
            ProblemId::Cihs => 0.97,
            ProblemId::Cims => 0.52,
            ProblemId::Cils => 0.07,
            ProblemId::Pihs => 0.99,
            ProblemId::Pims => 0.55,
            ProblemId::Pils => 0.002,
            ProblemId::Nihs => 0.94,
            ProblemId::Nims => 0.51,
            ProblemId::Nils => 0.001,
        }
    }

    pub fn intersection(&self) -> Intersection {
        match self {
            ProblemId::Cihs | ProblemId::Cims | ProblemId::Cils => Intersection::Complete,
            ProblemId::Pihs | ProblemId::Pims | ProblemId::Pils => Intersection::Partial,
            ProblemId::Nihs | ProblemId::Nims | ProblemId::Nils => Intersection::None,
        }
    }

    pub fn similarity_band(&self) -> SimilarityBand {
        SimilarityBand::of(self.documented_similarity())
    }

    /// Assets each task requires, in (shift, rotation) order.
    pub fn required_assets(&self, task_index: usize) -> &'static [AssetId] {
        match (self, task_index) {
            (ProblemId::Cims, 1) => &[AssetId::SCm2, AssetId::MCm2],
            (ProblemId::Pihs, 1) => &[AssetId::SPh2],
            (ProblemId::Pims, 0) => &[AssetId::SPm1, AssetId::MPm1],
            (ProblemId::Pims, 1) => &[AssetId::MPm2],
            (ProblemId::Nims, 1) => &[AssetId::MNm2],
            (ProblemId::Nils, 0) => &[AssetId::SNl1],
            _ => &[],
        }
    }
}

impl fmt::Display for ProblemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One multiobjective task: bounds, frame, landscape and its data.
#[derive(Clone, Debug)]
pub struct TaskDefinition {
    spec: TaskSpec,
    frame: Frame,
    base: BaseFunction,
    data: TaskData,
}

impl TaskDefinition {
    pub fn spec(&self) -> &TaskSpec {
        &self.spec
    }

    pub fn frame(&self) -> Frame {
        self.frame
    }

    pub fn base(&self) -> BaseFunction {
        self.base
    }

    pub fn data(&self) -> &TaskData {
        &self.data
    }

    pub fn n(&self) -> usize {
        self.spec.n()
    }

    pub fn objectives(&self) -> usize {
        self.frame.objectives()
    }

    fn head_len(&self) -> usize {
        self.frame.head_len()
    }

    fn tail_len(&self) -> usize {
        self.n() - self.head_len()
    }

    /// Landscape value at a bounded task-space point.
    pub fn q(&self, x: &[f64]) -> Result<f64, EvalError> {
        if x.len() != self.n() {
            return Err(EvalError::WrongDimension);
        }
        if !self.spec.contains(x) {
            return Err(EvalError::OutOfBounds);
        }
        self.q_unchecked(x)
    }

    fn q_unchecked(&self, x: &[f64]) -> Result<f64, EvalError> {
        let tail = &x[self.head_len()..];
        let mut z = Vec::with_capacity(tail.len());
        transform::apply_transform_into(tail, &self.data, &mut z, &mut Vec::new());
        base_q(self.base, &z)
    }

    /// Objective vector at a bounded task-space point. Out-of-bounds
    /// input is an error; the suite never repairs points silently.
    pub fn evaluate(&self, x: &[f64]) -> Result<Vec<f64>, EvalError> {
        if x.len() != self.n() {
            return Err(EvalError::WrongDimension);
        }
        if !self.spec.contains(x) {
            return Err(EvalError::OutOfBounds);
        }
        let q = self.q_unchecked(x)?;
        Ok(self.frame.assemble(&x[..self.head_len()], q))
    }

    /// Tail coordinates of the `q` optimum in task space.
    pub fn tail_optimum(&self) -> Vec<f64> {
        match (&self.data.shift, self.base) {
            (_, BaseFunction::Rosenbrock) => vec![1.0; self.tail_len()],
            (Some(s), _) => s.clone(),
            (None, _) => vec![0.0; self.tail_len()],
        }
    }

    /// Tail optimum normalized per dimension into `[0, 1]` by the bounds.
    pub fn normalized_tail_optimum(&self) -> Vec<f64> {
        let head = self.head_len();
        self.tail_optimum()
            .iter()
            .enumerate()
            .map(|(j, &v)| {
                let lo = self.spec.lower()[head + j];
                let hi = self.spec.upper()[head + j];
                (v - lo) / (hi - lo)
            })
            .collect()
    }
}

/// A named pair of tasks plus the unified-space dimensionality.
#[derive(Clone, Debug)]
pub struct BenchmarkProblem {
    id: ProblemId,
    tasks: Vec<TaskDefinition>,
    unified_dim: usize,
}

/// Supplies shift/rotation payloads when a problem is assembled.
pub trait AssetSource {
    fn fetch(&self, asset: AssetId) -> Result<AssetPayload, ProblemError>;
    fn provenance(&self) -> Provenance;
}

/// Seeded self-contained asset source.
pub struct GeneratedAssets {
    pub data_seed: u64,
}

impl AssetSource for GeneratedAssets {
    fn fetch(&self, asset: AssetId) -> Result<AssetPayload, ProblemError> {
        Ok(data::generate_asset(asset, self.data_seed))
    }

    fn provenance(&self) -> Provenance {
        Provenance::Generated {
            seed: self.data_seed,
        }
    }
}

struct TaskBlueprint {
    n: usize,
    tail_lo: f64,
    tail_hi: f64,
    frame: Frame,
    base: BaseFunction,
}

fn blueprints(id: ProblemId) -> [TaskBlueprint; 2] {
    use BaseFunction::*;
    use Frame::*;
    let t = |n, lo, hi, frame, base| TaskBlueprint {
        n,
        tail_lo: lo,
        tail_hi: hi,
        frame,
        base,
    };
    match id {
        ProblemId::Cihs => [
            t(50, -100.0, 100.0, CircleQuadrant, Sphere),
            t(50, -100.0, 100.0, ConcaveParabola, MeanAbs),
        ],
        ProblemId::Cims => [
            t(10, -5.0, 5.0, ConcaveParabola, Rosenbrock),
            t(10, -5.0, 5.0, CircleQuadrant, MeanAbs),
        ],
        ProblemId::Cils => [
            t(50, -2.0, 2.0, CircleQuadrant, Rastrigin),
            t(50, -1.0, 1.0, ConvexSqrt, Ackley),
        ],
        ProblemId::Pihs => [
            t(50, -100.0, 100.0, ConvexSqrt, Sphere),
            t(50, -100.0, 100.0, ConvexSqrt, Rastrigin),
        ],
        ProblemId::Pims => [
            t(50, 0.0, 1.0, CircleQuadrant, Sphere),
            t(50, 0.0, 1.0, ConcaveParabola, Rastrigin),
        ],
        ProblemId::Pils => [
            t(50, -50.0, 50.0, CircleQuadrant, Griewank),
            t(50, -100.0, 100.0, CircleQuadrant, Ackley),
        ],
        ProblemId::Nihs => [
            t(50, -80.0, 80.0, CircleQuadrant, Rosenbrock),
            t(50, -80.0, 80.0, ConvexSqrt, Sphere),
        ],
        ProblemId::Nims => [
            t(20, -20.0, 20.0, SphereOctant, Rosenbrock),
            t(20, -20.0, 20.0, MeanParabola, Sphere),
        ],
        ProblemId::Nils => [
            t(25, -50.0, 50.0, SphereOctant, Griewank),
            t(50, -100.0, 100.0, MeanParabola, Ackley),
        ],
    }
}

impl BenchmarkProblem {
    /// Assembles a problem, pulling any required assets from `source`.
    pub fn assemble(id: ProblemId, source: &dyn AssetSource) -> Result<Self, ProblemError> {
        let mut tasks = Vec::with_capacity(2);
        for (k, bp) in blueprints(id).into_iter().enumerate() {
            let head = bp.frame.head_len();
            let mut lower = vec![0.0; head];
            let mut upper = vec![1.0; head];
            lower.extend(core::iter::repeat(bp.tail_lo).take(bp.n - head));
            upper.extend(core::iter::repeat(bp.tail_hi).take(bp.n - head));
            let spec = TaskSpec::new(lower, upper, bp.frame.objectives())
                .map_err(ProblemError::Space)?;

            let mut shift = None;
            let mut rotation = None;
            for &asset in id.required_assets(k) {
                match source.fetch(asset)? {
                    AssetPayload::Shift(v) => {
                        if v.len() != bp.n - head {
                            return Err(ProblemError::AssetShape { asset });
                        }
                        shift = Some(v);
                    }
                    AssetPayload::Rotation(m) => {
                        if m.n() != bp.n - head {
                            return Err(ProblemError::AssetShape { asset });
                        }
                        rotation = Some(m);
                    }
                }
            }
            let provenance = if id.required_assets(k).is_empty() {
                Provenance::None
            } else {
                source.provenance()
            };
            tasks.push(TaskDefinition {
                spec,
                frame: bp.frame,
                base: bp.base,
                data: TaskData {
                    shift,
                    rotation,
                    provenance,
                },
            });
        }
        let unified_dim = tasks.iter().map(TaskDefinition::n).max().unwrap();
        Ok(Self {
            id,
            tasks,
            unified_dim,
        })
    }

    /// Assembles a problem with deterministically generated assets.
    pub fn generated(id: ProblemId, data_seed: u64) -> Self {
        Self::assemble(id, &GeneratedAssets { data_seed }).expect("generated assets always fit")
    }

    pub fn id(&self) -> ProblemId {
        self.id
    }

    pub fn tasks(&self) -> &[TaskDefinition] {
        &self.tasks
    }

    pub fn task(&self, task_index: usize) -> &TaskDefinition {
        &self.tasks[task_index]
    }

    /// Dimensionality of the unified search space: the maximum task
    /// dimensionality.
    pub fn unified_dim(&self) -> usize {
        self.unified_dim
    }

    pub fn task_view(&self, task_index: usize) -> TaskView<'_> {
        TaskView {
            def: &self.tasks[task_index],
            unified_dim: self.unified_dim,
            task_index,
        }
    }

    /// Per shared tail dimension, whether the two tasks' normalized `q`
    /// optima coincide (tolerance 1e-9). Returns (coinciding, shared).
    pub fn optimum_intersection(&self) -> (usize, usize) {
        let a = self.tasks[0].normalized_tail_optimum();
        let b = self.tasks[1].normalized_tail_optimum();
        let shared = a.len().min(b.len());
        let coinciding = a
            .iter()
            .zip(b.iter())
            .take(shared)
            .filter(|(x, y)| crate::math::abs(**x - **y) <= 1e-9)
            .count();
        (coinciding, shared)
    }

    /// Intersection category implied by the assembled data.
    pub fn observed_intersection(&self) -> Intersection {
        let (coinciding, shared) = self.optimum_intersection();
        if coinciding == shared {
            Intersection::Complete
        } else if coinciding == 0 {
            Intersection::None
        } else {
            Intersection::Partial
        }
    }
}

/// Evaluates task `task_index` (0-based) of `problem` at a task-space point.
pub fn evaluate_task(
    problem: &BenchmarkProblem,
    task_index: usize,
    x: &[f64],
) -> Result<Vec<f64>, EvalError> {
    problem.task(task_index).evaluate(x)
}

/// A task bound to its problem's unified space.
#[derive(Clone, Copy)]
pub struct TaskView<'a> {
    pub def: &'a TaskDefinition,
    pub unified_dim: usize,
    pub task_index: usize,
}

impl<'a> TaskView<'a> {
    /// Decodes the genotype prefix and evaluates the task's objectives.
    pub fn evaluate_unified(&self, y: &UnifiedVector) -> Result<Vec<f64>, EvalError> {
        debug_assert_eq!(y.dim(), self.unified_dim);
        let mut x = Vec::with_capacity(self.def.n());
        decode_into(y.as_slice(), self.def.spec(), &mut x);
        self.def.evaluate(&x)
    }

    /// Decodes the genotype prefix and evaluates only the landscape `q`.
    pub fn q_unified(&self, y: &[f64]) -> Result<f64, EvalError> {
        let mut x = Vec::with_capacity(self.def.n());
        decode_into(y, self.def.spec(), &mut x);
        self.def.q(&x)
    }

    pub fn objectives(&self) -> usize {
        self.def.objectives()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ProblemError {
    MissingAsset { asset: AssetId },
    AssetShape { asset: AssetId },
    Data(DataError),
    Space(SpaceError),
}

impl fmt::Display for ProblemError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProblemError::MissingAsset { asset } => {
                write!(f, "missing task data asset {}", asset.name())
            }
            ProblemError::AssetShape { asset } => write!(
                f,
                "asset {} does not match the task's tail dimensionality",
                asset.name()
            ),
            ProblemError::Data(e) => write!(f, "task data error: {e}"),
            ProblemError::Space(e) => write!(f, "bounds error: {e}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ProblemError {}

impl From<DataError> for ProblemError {
    fn from(e: DataError) -> Self {
        ProblemError::Data(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn generated(id: ProblemId) -> BenchmarkProblem {
        BenchmarkProblem::generated(id, 7)
    }

    #[test]
    fn catalog_dimensions_match_the_summary_table() {
        let expect = [
            (ProblemId::Cihs, 50, 50, 2, 2),
            (ProblemId::Cims, 10, 10, 2, 2),
            (ProblemId::Cils, 50, 50, 2, 2),
            (ProblemId::Pihs, 50, 50, 2, 2),
            (ProblemId::Pims, 50, 50, 2, 2),
            (ProblemId::Pils, 50, 50, 2, 2),
            (ProblemId::Nihs, 50, 50, 2, 2),
            (ProblemId::Nims, 20, 20, 3, 2),
            (ProblemId::Nils, 25, 50, 3, 2),
        ];
        for (id, n1, n2, m1, m2) in expect {
            let p = generated(id);
            assert_eq!(p.task(0).n(), n1, "{id} T1 n");
            assert_eq!(p.task(1).n(), n2, "{id} T2 n");
            assert_eq!(p.task(0).objectives(), m1, "{id} T1 objectives");
            assert_eq!(p.task(1).objectives(), m2, "{id} T2 objectives");
            assert_eq!(p.unified_dim(), n1.max(n2), "{id} unified dim");
        }
    }

    #[test]
    fn documented_similarities_match_the_summary_table() {
        let values: Vec<f64> = ProblemId::ALL
            .iter()
            .map(|p| p.documented_similarity())
            .collect();
        assert_eq!(
            values,
            vec![0.97, 0.52, 0.07, 0.99, 0.55, 0.002, 0.94, 0.51, 0.001]
        );
    }

    #[test]
    fn cihs_t1_axis_point() {
        let p = generated(ProblemId::Cihs);
        let mut x = vec![0.0; 50];
        let f = evaluate_task(&p, 0, &x).unwrap();
        assert!((f[0] - 1.0).abs() <= 1e-12 && f[1].abs() <= 1e-12, "{f:?}");
        x[0] = 1.0;
        let f = evaluate_task(&p, 0, &x).unwrap();
        assert!(f[0].abs() <= 1e-12 && (f[1] - 1.0).abs() <= 1e-12, "{f:?}");
    }

    #[test]
    fn cihs_t2_midpoint() {
        let p = generated(ProblemId::Cihs);
        let mut x = vec![0.0; 50];
        x[0] = 0.5;
        let f = evaluate_task(&p, 1, &x).unwrap();
        assert!((f[0] - 0.5).abs() <= 1e-12 && (f[1] - 0.75).abs() <= 1e-12);
    }

    #[test]
    fn cils_t1_sine_endpoint() {
        let p = generated(ProblemId::Cils);
        let mut x = vec![0.0; 50];
        x[0] = 1.0;
        let f = evaluate_task(&p, 0, &x).unwrap();
        assert!(f[0].abs() <= 1e-12 && (f[1] - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn nims_t2_closing_point() {
        let p = generated(ProblemId::Nims);
        let mut x = vec![0.0; 20];
        x[0] = 1.0;
        x[1] = 1.0;
        let f = evaluate_task(&p, 1, &x).unwrap();
        assert!((f[0] - 1.0).abs() <= 1e-12 && f[1].abs() <= 1e-12, "{f:?}");
    }

    #[test]
    fn out_of_bounds_is_rejected_not_repaired() {
        let p = generated(ProblemId::Cihs);
        let mut x = vec![0.0; 50];
        x[5] = 100.0001;
        assert_eq!(evaluate_task(&p, 0, &x), Err(EvalError::OutOfBounds));
        x[5] = 100.0;
        assert!(evaluate_task(&p, 0, &x).is_ok(), "bounds are inclusive");
    }

    #[test]
    fn generated_data_preserves_the_intersection_taxonomy() {
        for id in ProblemId::ALL {
            let p = generated(id);
            match id.intersection() {
                Intersection::Complete => {
                    assert_eq!(p.observed_intersection(), Intersection::Complete, "{id}")
                }
                Intersection::None => {
                    assert_eq!(p.observed_intersection(), Intersection::None, "{id}")
                }
                Intersection::Partial => {}
            }
        }
    }

    #[test]
    fn q_floor_on_random_bounded_points() {
        let mut rng = crate::rng::rng_stream(5, 0);
        for id in ProblemId::ALL {
            let p = generated(id);
            for task in p.tasks() {
                for _ in 0..500 {
                    let x: Vec<f64> = task
                        .spec()
                        .lower()
                        .iter()
                        .zip(task.spec().upper())
                        .map(|(l, u)| l + (u - l) * rng.next_f64())
                        .collect();
                    let q = task.q(&x).unwrap();
                    assert!(q >= 1.0 - 1e-12, "{id}: q = {q}");
                }
                let mut opt: Vec<f64> = vec![0.5; task.frame().head_len()];
                opt.extend(task.tail_optimum());
                let q = task.q(&opt).unwrap();
                assert!((q - 1.0).abs() <= 1e-9, "{id}: q at optimum = {q}");
            }
        }
    }
}
