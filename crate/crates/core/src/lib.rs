//! Lossy preprocessing for the red-blue dominating set problem.
//!
//! The crate provides two exact reduction rules (isolated and pendant
//! vertices), a reduction rule that loses at most a factor of two, solution
//! lifting, drop-in greedy approximators, an exact branch-and-bound solver,
//! random graph generators, graph file parsers and the AA/LA experiment
//! harness comparing approximation with and without the lossy rule.

pub mod approx;
pub mod error;
pub mod exact;
pub mod generators;
pub mod graph;
pub mod harness;
pub mod instance;
pub mod io;
pub mod reductions;

pub use approx::{approximate, ApproximatorId};
pub use error::{Error, Result};
pub use exact::{brute_force_min, exact_min, ExactResult};
pub use graph::{Graph, Vertex};
pub use harness::{
    aggregate, evaluate, improvement_pct, run_exp_aa, run_exp_la, AggregateStats, EvalOptions,
    ExValue, RunReport,
};
pub use instance::{Color, DsValue, RbInstance};
pub use reductions::{
    lift_solution, reduce, rr_isolated, rr_lossy2, rr_pendant_exhaustive, verify_psi, LiftRecord,
    PsiMap, ReductionOptions, ReductionTrace, RuleKind,
};
