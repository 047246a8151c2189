//! Benchmark suite and baseline solvers for two-task multiobjective
//! multitasking: nine paired continuous test problems, the NSGA-II and
//! MO-MFEA optimizers that share one variation toolbox, and the quality
//! indicators (IGD, MSS, landscape similarity, Wilcoxon signed-rank)
//! used to compare them.
//!
//! The crate is `no_std`-compatible (with `alloc`); disable the default
//! `std` feature to build it that way, in which case scalar math is
//! routed through `libm`.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod individual;
pub(crate) mod math;
pub mod metrics;
pub mod momfea;
pub mod nsga2;
pub mod operators;
pub mod problems;
pub mod rng;
pub mod run;
pub mod space;

pub use individual::Individual;
pub use problems::{BenchmarkProblem, ProblemId};
pub use rng::{derive_seed, rng_stream, RunRng};
pub use run::{RunConfig, RunOutput, TaskOutcome};
pub use space::{decode, TaskSpec, UnifiedVector};
