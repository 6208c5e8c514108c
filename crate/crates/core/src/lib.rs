//! Simulation laboratory for action-manipulation attacks on stochastic
//! multi-armed bandits.
//!
//! An action-manipulation adversary sits between a bandit policy and the
//! environment and may replace the chosen arm with another; the reward then
//! comes from the substituted arm. This crate provides:
//!
//! - [`env`]: bandit instances with Gaussian rewards and counter-based,
//!   trial-splittable random streams;
//! - [`agents`]: the UCB policy and the attack-robust MOUCB policy;
//! - [`attackers`]: the null baseline, the ground-truth oracle attack and
//!   the online LCB attack;
//! - [`engine`]: the per-round interaction loop, omniscient traces with
//!   confidence-event tracking, and a deterministic parallel trial runner;
//! - [`bounds`]: closed-form evaluators for the attack-cost and
//!   defense-regret guarantees, for comparing theory against runs;
//! - [`report`]: CSV rendering in a single `round,metric,mean,std,trials`
//!   schema.
//!
//! Everything is deterministic given `(master_seed, trial_id)`: replays are
//! bit-identical regardless of thread count or trial execution order.

pub mod agents;
pub mod attackers;
pub mod bounds;
pub mod engine;
pub mod env;
pub mod error;
pub mod report;

pub use agents::{AgentState, PolicyKind};
pub use attackers::{AttackerKind, AttackerState};
pub use engine::{ExperimentConfig, ExperimentResult, TrialTrace};
pub use env::{Arm, BanditInstance, DistributionKind, RngStream};
pub use error::{Error, Result};
