//! Experiment orchestration for the multitask benchmark suite: runs the
//! full comparison protocol, persists per-run JSON records, aggregates
//! the IGD/MSS/significance report and convergence curves, and backs the
//! `mtbench` command-line interface.

pub mod aggregate;
pub mod assets;
pub mod cli;
pub mod config;
pub mod curves;
pub mod pstar;
pub mod records;
pub mod runner;

pub use config::ExperimentConfig;
pub use records::RunRecord;
