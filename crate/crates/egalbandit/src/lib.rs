//! Simulation library for the egalitarian multi-user stochastic bandit
//! problem: a centralized agent assigns `U` users to distinct arms out of `K`
//! each step, and the objective is the cumulative reward of the worst-off
//! user.
//!
//! The crate provides
//!
//! * the block-based EgalUCB assignment policy with oracle and random
//!   baselines ([`policy`]),
//! * a seeded, reproducible episode simulator with egalitarian regret
//!   accounting and parallel replication ([`sim`]),
//! * evaluators for the problem-dependent and problem-independent regret
//!   upper bounds and the policy-independent lower bound, plus the hard
//!   instance pair behind the lower bound ([`bounds`]),
//! * ingestion of trace/ratings CSVs into empirical instances ([`ingest`]).
//!
//! Episodes are deterministic functions of `(instance, users, horizon,
//! policy, seed)`; replication across seeds is data-parallel when the
//! default `parallel` feature is enabled and bit-identical either way.

pub mod bounds;
pub mod error;
pub mod ingest;
pub mod instance;
pub mod instance_file;
pub mod policy;
pub mod sim;

pub use error::{AssignmentViolation, Error, Result};
pub use instance::{
    gap_summary, suboptimality_gap, validate_assignment, ArmDistribution, Assignment,
    EgalMabInstance, GapSummary,
};
pub use policy::{
    oracle_select, random_select, round_robin_assignment, select_top_ucb, EgalUcbState,
    PolicyKind, UcbValue,
};
pub use sim::{
    aggregate_runs, fit_loglog_slope, pseudo_regret_curve, replicate, replicate_runs,
    replicate_sequential, run_episode, AggregateResult, RunResult,
};
