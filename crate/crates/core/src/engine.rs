//! The interaction loop and the multi-trial experiment runner.
//!
//! Each round: the policy chooses an arm, the attacker maps it to the
//! executed arm, the environment draws the reward from the executed arm,
//! and both sides observe the reward (the policy never learns which arm was
//! executed). An omniscient [`TrialTrace`] sits outside both information
//! boundaries and records the chosen-by-executed count matrix, the attack
//! cost, the realized pseudo-regret, and checkpointed snapshots.
//!
//! Trials are embarrassingly parallel: each owns its agent, attacker and
//! counter-based random stream, and aggregation reduces per-trial traces in
//! trial order, so results are independent of thread count and execution
//! order.

use rand::Rng;
use rayon::prelude::*;

use crate::agents::{confidence_spread, moucb_radius, AgentState, PolicyKind};
use crate::attackers::{confidence_radius, AttackerKind, AttackerState};
use crate::env::{Arm, BanditInstance, RngStream};
use crate::error::{Error, Result};

/// Default number of geometrically spaced checkpoints.
pub const DEFAULT_CHECKPOINT_COUNT: usize = 50;

/// Metric names emitted per checkpoint, in output order.
pub const METRICS: [&str; 4] = ["cost", "regret", "target_pulls", "optimal_pulls"];

/// `count` geometrically spaced rounds in `[1, horizon]` plus the horizon
/// itself, deduplicated. When the horizon is a power of ten the schedule
/// contains every smaller power of ten.
pub fn geometric_checkpoints(horizon: u64, count: usize) -> Vec<u64> {
    if horizon == 0 {
        return Vec::new();
    }
    let log_h = (horizon as f64).ln();
    let mut points: Vec<u64> = (1..=count)
        .map(|i| (log_h * i as f64 / count as f64).exp().round() as u64)
        .map(|r| r.clamp(1, horizon))
        .collect();
    points.push(horizon);
    points.sort_unstable();
    points.dedup();
    points
}

/// Confidence radius of a per-(chosen, executed) cell mean:
/// `sqrt(2 sigma^2 / n * ln(pi^2 K^2 n^2 / (3 delta)))`.
pub fn cross_confidence_radius(
    pulls: u64,
    sigma: f64,
    arm_count: usize,
    delta: f64,
) -> Result<f64> {
    if pulls == 0 {
        return Err(Error::ZeroPullCount);
    }
    let n = pulls as f64;
    let k = arm_count as f64;
    let arg = std::f64::consts::PI.powi(2) * k * k * n * n / (3.0 * delta);
    Ok((2.0 * sigma * sigma / n * arg.ln()).sqrt())
}

/// Full description of one experiment: environment, policy, adversary,
/// horizon, trial count, seeding and checkpoint schedule.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub instance: BanditInstance,
    pub agent_kind: PolicyKind,
    pub agent_delta: f64,
    /// Attack-budget bound `A` given to MOUCB; ignored by UCB.
    pub budget_bound: u64,
    pub attacker_kind: AttackerKind,
    pub attacker_delta: f64,
    pub target_arm: Arm,
    /// Optional cap on the number of manipulations the attacker may perform.
    pub cost_cap: Option<u64>,
    pub horizon: u64,
    pub trials: u64,
    pub master_seed: u64,
    /// Explicit checkpoint rounds; empty selects the geometric default.
    pub checkpoints: Vec<u64>,
    /// Track per-cell sums and confidence events (slower; analysis runs only).
    pub omniscient: bool,
}

impl ExperimentConfig {
    /// Config with the conventional defaults: delta 0.05 on both sides,
    /// horizon 100 000, 20 trials, seed 42, geometric checkpoints.
    pub fn new(
        instance: BanditInstance,
        agent_kind: PolicyKind,
        attacker_kind: AttackerKind,
        target_arm: Arm,
    ) -> Self {
        ExperimentConfig {
            instance,
            agent_kind,
            agent_delta: 0.05,
            budget_bound: 0,
            attacker_kind,
            attacker_delta: 0.05,
            target_arm,
            cost_cap: None,
            horizon: 100_000,
            trials: 20,
            master_seed: 42,
            checkpoints: Vec::new(),
            omniscient: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.target_arm.get() > self.instance.arm_count() {
            return Err(Error::ArmOutOfRange {
                arm: self.target_arm.get(),
                arm_count: self.instance.arm_count(),
            });
        }
        if self.horizon < self.instance.arm_count() as u64 {
            return Err(Error::InvalidConfig(format!(
                "horizon {} is below the arm count {}",
                self.horizon,
                self.instance.arm_count()
            )));
        }
        if self.trials == 0 {
            return Err(Error::InvalidConfig("trials must be at least 1".into()));
        }
        if self.omniscient && !(self.attacker_delta > 0.0 && self.attacker_delta <= 1.0 / 3.0) {
            // The offset-radius check reuses the warm-up radius, which is
            // only monotone (and only accepted) for delta <= 1/3.
            return Err(Error::InvalidConfig(format!(
                "omniscient event tracking needs attacker delta in (0, 1/3], got {}",
                self.attacker_delta
            )));
        }
        self.build_agent()?;
        self.build_attacker()?;
        Ok(())
    }

    /// Non-fatal configuration smells.
    pub fn warnings(&self) -> Vec<String> {
        let mut w = Vec::new();
        if self.agent_kind == PolicyKind::Moucb {
            let warmup = 2 * self.budget_bound * self.instance.arm_count() as u64;
            if self.horizon < warmup {
                w.push(format!(
                    "horizon {} is shorter than the MOUCB warm-up of {warmup} rounds; \
                     the index rule will never engage",
                    self.horizon
                ));
            }
        }
        w
    }

    /// The checkpoint schedule actually used: the explicit list (sorted,
    /// deduplicated, clamped, horizon appended) or the geometric default.
    pub fn checkpoint_schedule(&self) -> Vec<u64> {
        if self.checkpoints.is_empty() {
            return geometric_checkpoints(self.horizon, DEFAULT_CHECKPOINT_COUNT);
        }
        let mut pts: Vec<u64> = self
            .checkpoints
            .iter()
            .copied()
            .filter(|&c| c >= 1 && c <= self.horizon)
            .collect();
        pts.push(self.horizon);
        pts.sort_unstable();
        pts.dedup();
        pts
    }

    fn build_agent(&self) -> Result<AgentState> {
        let k = self.instance.arm_count();
        let sigma = self.instance.sigma();
        match self.agent_kind {
            PolicyKind::Ucb => AgentState::new_ucb(k, sigma, self.agent_delta),
            PolicyKind::Moucb => {
                AgentState::new_moucb(k, sigma, self.agent_delta, self.budget_bound)
            }
        }
    }

    fn build_attacker(&self) -> Result<AttackerState> {
        let k = self.instance.arm_count();
        let sigma = self.instance.sigma();
        match self.attacker_kind {
            AttackerKind::Null => {
                AttackerState::new_null(k, self.target_arm, sigma, self.attacker_delta)
            }
            AttackerKind::Oracle => AttackerState::new_oracle(
                &self.instance,
                self.target_arm,
                self.attacker_delta,
                self.cost_cap,
            ),
            AttackerKind::Lcb => AttackerState::new_lcb(
                k,
                self.target_arm,
                sigma,
                self.attacker_delta,
                self.cost_cap,
            ),
        }
    }
}

/// Snapshot of the running totals at one checkpoint round.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckpointRecord {
    pub round: u64,
    pub cost: u64,
    pub regret: f64,
    pub target_pulls: u64,
    pub optimal_pulls: u64,
    /// Omniscient runs only: twice the agent-side confidence spread, the
    /// quantity MOUCB uses to over-estimate the best-to-worst gap.
    pub gap_over_estimate: Option<f64>,
}

/// Extra state kept only in omniscient runs: per-cell reward sums and the
/// running verdicts of the confidence events.
#[derive(Debug, Clone, PartialEq)]
struct OmniscientTrace {
    delta: f64,
    /// Reward sums per (chosen, executed) cell, row-major.
    cross_sums: Vec<f64>,
    /// Per chosen arm, the sum of true means of the executed arms.
    executed_mean_sums: Vec<f64>,
    e1_violated: bool,
    e2_violated: bool,
    offset_bound_violated: bool,
}

/// Omniscient per-trial recorder: chosen-by-executed counts, attack cost,
/// realized pseudo-regret `sum_t (best_mean - mean(executed_t))`, and
/// per-checkpoint snapshots.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialTrace {
    arm_count: usize,
    target_arm: Arm,
    optimal_arm: Arm,
    /// Row-major `[chosen][executed]` pull counts.
    cross_counts: Vec<u64>,
    cost: u64,
    regret: f64,
    target_pulls: u64,
    optimal_pulls: u64,
    round: u64,
    checkpoints: Vec<CheckpointRecord>,
    omniscient: Option<OmniscientTrace>,
}

impl TrialTrace {
    fn new(config: &ExperimentConfig) -> Self {
        let k = config.instance.arm_count();
        TrialTrace {
            arm_count: k,
            target_arm: config.target_arm,
            optimal_arm: config.instance.best_arm(),
            cross_counts: vec![0; k * k],
            cost: 0,
            regret: 0.0,
            target_pulls: 0,
            optimal_pulls: 0,
            round: 0,
            checkpoints: Vec::new(),
            omniscient: config.omniscient.then(|| OmniscientTrace {
                delta: config.attacker_delta,
                cross_sums: vec![0.0; k * k],
                executed_mean_sums: vec![0.0; k],
                e1_violated: false,
                e2_violated: false,
                offset_bound_violated: false,
            }),
        }
    }

    pub fn arm_count(&self) -> usize {
        self.arm_count
    }

    pub fn round(&self) -> u64 {
        self.round
    }

    /// Rounds where the executed arm differed from the chosen arm.
    pub fn cost(&self) -> u64 {
        self.cost
    }

    /// Realized pseudo-regret `sum_t (best_mean - mean(executed_t))`.
    pub fn realized_pseudo_regret(&self) -> f64 {
        self.regret
    }

    /// Rounds where the policy chose the target arm.
    pub fn target_pulls(&self) -> u64 {
        self.target_pulls
    }

    /// Rounds where the policy chose the true best arm.
    pub fn optimal_pulls(&self) -> u64 {
        self.optimal_pulls
    }

    pub fn checkpoints(&self) -> &[CheckpointRecord] {
        &self.checkpoints
    }

    /// Pulls where the policy chose `chosen` and `executed` was executed.
    pub fn cross_count(&self, chosen: Arm, executed: Arm) -> u64 {
        self.cross_counts[chosen.index() * self.arm_count + executed.index()]
    }

    /// Row sums: the policy-side pull counts.
    pub fn chosen_counts(&self) -> Vec<u64> {
        (0..self.arm_count)
            .map(|i| {
                self.cross_counts[i * self.arm_count..(i + 1) * self.arm_count]
                    .iter()
                    .sum()
            })
            .collect()
    }

    /// Column sums: the executed (post-attack) pull counts.
    pub fn executed_counts(&self) -> Vec<u64> {
        (0..self.arm_count)
            .map(|j| {
                (0..self.arm_count)
                    .map(|i| self.cross_counts[i * self.arm_count + j])
                    .sum()
            })
            .collect()
    }

    /// Whether the attacker-side confidence event was ever violated.
    /// `None` outside omniscient runs.
    pub fn e1_violated(&self) -> Option<bool> {
        self.omniscient.as_ref().map(|o| o.e1_violated)
    }

    /// Whether the per-cell confidence event was ever violated.
    pub fn e2_violated(&self) -> Option<bool> {
        self.omniscient.as_ref().map(|o| o.e2_violated)
    }

    /// Whether the policy-side offset bound (the radius consequence of the
    /// per-cell event) was ever violated.
    pub fn offset_bound_violated(&self) -> Option<bool> {
        self.omniscient.as_ref().map(|o| o.offset_bound_violated)
    }

    fn cell(&self, chosen: Arm, executed: Arm) -> usize {
        chosen.index() * self.arm_count + executed.index()
    }

    fn record_round(
        &mut self,
        instance: &BanditInstance,
        chosen: Arm,
        executed: Arm,
        reward: f64,
    ) -> Result<()> {
        self.round += 1;
        let cell = self.cell(chosen, executed);
        self.cross_counts[cell] += 1;
        if chosen != executed {
            self.cost += 1;
        }
        self.regret += instance.mean(self.optimal_arm)? - instance.mean(executed)?;
        if chosen == self.target_arm {
            self.target_pulls += 1;
        }
        if chosen == self.optimal_arm {
            self.optimal_pulls += 1;
        }
        if self.omniscient.is_some() {
            self.record_omniscient(instance, chosen, executed, reward, cell)?;
        }
        Ok(())
    }

    fn record_omniscient(
        &mut self,
        instance: &BanditInstance,
        chosen: Arm,
        executed: Arm,
        reward: f64,
        cell: usize,
    ) -> Result<()> {
        let executed_mean = instance.mean(executed)?;
        {
            let omni = self.omniscient.as_mut().expect("omniscient mode");
            omni.cross_sums[cell] += reward;
            omni.executed_mean_sums[chosen.index()] += executed_mean;
        }
        // The confidence events quantify over all rounds past the first K.
        // Entries not touched this round carry the same (mean, radius) pair
        // they had when last checked, so after one full scan at round K + 1
        // it suffices to re-check only the entries updated this round.
        let first_checked_round = self.arm_count as u64 + 1;
        if self.round < first_checked_round {
            return Ok(());
        }
        let full_scan = self.round == first_checked_round;
        let (e1, e2, offset) = self.scan_violations(instance, full_scan, chosen, executed)?;
        let omni = self.omniscient.as_mut().expect("omniscient mode");
        omni.e1_violated |= e1;
        omni.e2_violated |= e2;
        omni.offset_bound_violated |= offset;
        Ok(())
    }

    fn scan_violations(
        &self,
        instance: &BanditInstance,
        full_scan: bool,
        chosen: Arm,
        executed: Arm,
    ) -> Result<(bool, bool, bool)> {
        let k = self.arm_count;
        let sigma = instance.sigma();
        let omni = self.omniscient.as_ref().expect("omniscient mode");
        let delta = omni.delta;
        let counts = &self.cross_counts;
        let sums = &omni.cross_sums;
        let cell_of = |i: usize, j: usize| i * k + j;

        let e1_violation = |j: usize| -> Result<bool> {
            let n: u64 = (0..k).map(|i| counts[cell_of(i, j)]).sum();
            if n == 0 {
                return Ok(false);
            }
            let s: f64 = (0..k).map(|i| sums[cell_of(i, j)]).sum();
            let radius = confidence_radius(n, sigma, k, delta)?;
            Ok((s / n as f64 - instance.mean(Arm::from_index(j))?).abs() >= radius)
        };
        let e2_violation = |i: usize, j: usize| -> Result<bool> {
            let n = counts[cell_of(i, j)];
            if n == 0 {
                return Ok(false);
            }
            let radius = cross_confidence_radius(n, sigma, k, delta)?;
            let mean = sums[cell_of(i, j)] / n as f64;
            Ok((mean - instance.mean(Arm::from_index(j))?).abs() >= radius)
        };
        let offset_violation = |i: usize| -> Result<bool> {
            let n: u64 = (0..k).map(|j| counts[cell_of(i, j)]).sum();
            if n == 0 {
                return Ok(false);
            }
            let s: f64 = (0..k).map(|j| sums[cell_of(i, j)]).sum();
            let avg_executed_mean = omni.executed_mean_sums[i] / n as f64;
            let radius = moucb_radius(n, sigma, k, delta)?;
            Ok((s / n as f64 - avg_executed_mean).abs() >= radius)
        };

        let mut e1 = false;
        let mut e2 = false;
        let mut offset = false;
        if full_scan {
            for j in 0..k {
                e1 |= e1_violation(j)?;
                offset |= offset_violation(j)?;
                for i in 0..k {
                    e2 |= e2_violation(i, j)?;
                }
            }
        } else {
            e1 = e1_violation(executed.index())?;
            e2 = e2_violation(chosen.index(), executed.index())?;
            offset = offset_violation(chosen.index())?;
        }
        Ok((e1, e2, offset))
    }

    fn record_checkpoint(&mut self, agent: &AgentState) {
        let gap_over_estimate = match &self.omniscient {
            Some(_) if agent.pull_counts().iter().all(|&n| n > 0) && agent.delta() <= 1.0 / 3.0 => {
                let means: Vec<f64> = (0..self.arm_count)
                    .map(|i| agent.empirical_mean(Arm::from_index(i)).expect("pulled"))
                    .collect();
                confidence_spread(&means, agent.pull_counts(), agent.sigma(), agent.delta())
                    .ok()
                    .map(|s| 2.0 * s)
            }
            _ => None,
        };
        self.checkpoints.push(CheckpointRecord {
            round: self.round,
            cost: self.cost,
            regret: self.regret,
            target_pulls: self.target_pulls,
            optimal_pulls: self.optimal_pulls,
            gap_over_estimate,
        });
    }
}

/// One round of the interaction loop.
pub fn step<R: Rng + ?Sized>(
    agent: &mut AgentState,
    attacker: &mut AttackerState,
    instance: &BanditInstance,
    rng: &mut R,
    trace: &mut TrialTrace,
) -> Result<()> {
    debug_assert_eq!(agent.round(), attacker.round());
    debug_assert_eq!(agent.round(), trace.round());
    let chosen = agent.select();
    let executed = attacker.attack(chosen);
    let reward = instance.sample_reward(executed, rng)?;
    agent.update(chosen, reward);
    attacker.update(chosen, executed, reward);
    trace.record_round(instance, chosen, executed, reward)
}

/// Runs one trial with the stream `(config.master_seed, trial_id)`.
/// Identical arguments replay bit-identically.
pub fn run_trial(config: &ExperimentConfig, trial_id: u64) -> Result<TrialTrace> {
    let schedule = config.checkpoint_schedule();
    let mut agent = config.build_agent()?;
    let mut attacker = config.build_attacker()?;
    let mut rng = RngStream::new(config.master_seed, trial_id).rng();
    let mut trace = TrialTrace::new(config);
    let mut next = 0usize;
    for t in 1..=config.horizon {
        step(
            &mut agent,
            &mut attacker,
            &config.instance,
            &mut rng,
            &mut trace,
        )?;
        if next < schedule.len() && schedule[next] == t {
            trace.record_checkpoint(&agent);
            next += 1;
        }
    }
    debug_assert_eq!(trace.cost, attacker.attacks_made());
    Ok(trace)
}

/// Like [`run_trial`] but streams one `t,chosen,post,reward` row per round
/// into `log`.
pub fn run_trial_logged<W: std::io::Write>(
    config: &ExperimentConfig,
    trial_id: u64,
    log: &mut W,
) -> Result<TrialTrace> {
    let schedule = config.checkpoint_schedule();
    let mut agent = config.build_agent()?;
    let mut attacker = config.build_attacker()?;
    let mut rng = RngStream::new(config.master_seed, trial_id).rng();
    let mut trace = TrialTrace::new(config);
    let io_err = |e: std::io::Error| Error::InvalidConfig(format!("debug log: {e}"));
    writeln!(log, "t,chosen,post,reward").map_err(io_err)?;
    let mut next = 0usize;
    for t in 1..=config.horizon {
        let chosen = agent.select();
        let executed = attacker.attack(chosen);
        let reward = config.instance.sample_reward(executed, &mut rng)?;
        agent.update(chosen, reward);
        attacker.update(chosen, executed, reward);
        trace.record_round(&config.instance, chosen, executed, reward)?;
        writeln!(log, "{t},{chosen},{executed},{reward}").map_err(io_err)?;
        if next < schedule.len() && schedule[next] == t {
            trace.record_checkpoint(&agent);
            next += 1;
        }
    }
    Ok(trace)
}

/// Runs all trials of `config` in parallel and returns them in trial order.
pub fn run_trials(config: &ExperimentConfig) -> Result<Vec<TrialTrace>> {
    config.validate()?;
    (0..config.trials)
        .into_par_iter()
        .map(|trial_id| run_trial(config, trial_id))
        .collect()
}

/// One `round,metric` aggregate across trials.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregateRow {
    pub round: u64,
    pub metric: &'static str,
    pub mean: f64,
    pub std: f64,
}

/// Per-checkpoint means and standard deviations across trials, in
/// checkpoint-major, metric-minor order.
#[derive(Debug, Clone, PartialEq)]
pub struct Aggregate {
    pub trials: u64,
    pub rows: Vec<AggregateRow>,
}

impl Aggregate {
    /// Looks up `(mean, std)` for a metric at a checkpoint round.
    pub fn value(&self, round: u64, metric: &str) -> Option<(f64, f64)> {
        self.rows
            .iter()
            .find(|r| r.round == round && r.metric == metric)
            .map(|r| (r.mean, r.std))
    }

    /// All checkpoint rounds, ascending.
    pub fn rounds(&self) -> Vec<u64> {
        let mut rounds: Vec<u64> = self.rows.iter().map(|r| r.round).collect();
        rounds.dedup();
        rounds
    }
}

fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    (mean, var.max(0.0).sqrt())
}

/// Reduces per-trial traces to per-checkpoint statistics. The reduction
/// runs in trial order, so it is independent of how the traces were
/// produced.
pub fn aggregate(traces: &[TrialTrace]) -> Result<Aggregate> {
    let first = traces
        .first()
        .ok_or_else(|| Error::InvalidConfig("cannot aggregate zero trials".into()))?;
    let schedule: Vec<u64> = first.checkpoints().iter().map(|c| c.round).collect();
    for t in traces {
        let s: Vec<u64> = t.checkpoints().iter().map(|c| c.round).collect();
        if s != schedule {
            return Err(Error::InvalidConfig(
                "traces disagree on the checkpoint schedule".into(),
            ));
        }
    }
    let mut rows = Vec::with_capacity(schedule.len() * METRICS.len());
    for (ci, &round) in schedule.iter().enumerate() {
        for &metric in &METRICS {
            let values: Vec<f64> = traces
                .iter()
                .map(|t| {
                    let c = &t.checkpoints()[ci];
                    match metric {
                        "cost" => c.cost as f64,
                        "regret" => c.regret,
                        "target_pulls" => c.target_pulls as f64,
                        "optimal_pulls" => c.optimal_pulls as f64,
                        _ => unreachable!(),
                    }
                })
                .collect();
            let (mean, std) = mean_std(&values);
            rows.push(AggregateRow {
                round,
                metric,
                mean,
                std,
            });
        }
    }
    Ok(Aggregate {
        trials: traces.len() as u64,
        rows,
    })
}

/// Traces plus their aggregate.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentResult {
    pub traces: Vec<TrialTrace>,
    pub aggregate: Aggregate,
}

/// Runs every trial of `config` and aggregates.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentResult> {
    let traces = run_trials(config)?;
    let aggregate = aggregate(&traces)?;
    Ok(ExperimentResult { traces, aggregate })
}

/// Violation rates of the confidence events over `trials` omniscient runs.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverageReport {
    pub trials: u64,
    /// Fraction of trials in which some attacker-side mean ever left its
    /// confidence radius.
    pub e1_violation_rate: f64,
    /// Fraction of trials in which some per-cell mean ever left its radius.
    pub e2_violation_rate: f64,
    /// Fraction of cell-event-satisfying trials in which the policy-side
    /// offset bound nevertheless failed (always 0: it is a deterministic
    /// consequence).
    pub lemma3_violation_rate: f64,
}

/// Runs `trials` omniscient trials of `config` and reports how often each
/// confidence event was violated. Needs at least 100 trials for the rates
/// to mean anything.
pub fn coverage_check(config: &ExperimentConfig, trials: u64) -> Result<CoverageReport> {
    if trials < 100 {
        return Err(Error::InvalidConfig(format!(
            "coverage needs at least 100 trials, got {trials}"
        )));
    }
    let mut cfg = config.clone();
    cfg.omniscient = true;
    cfg.trials = trials;
    let traces = run_trials(&cfg)?;
    let m = traces.len() as f64;
    let e1 = traces
        .iter()
        .filter(|t| t.e1_violated() == Some(true))
        .count() as f64;
    let e2 = traces
        .iter()
        .filter(|t| t.e2_violated() == Some(true))
        .count() as f64;
    let e2_ok: Vec<&TrialTrace> = traces
        .iter()
        .filter(|t| t.e2_violated() == Some(false))
        .collect();
    let lemma3 = if e2_ok.is_empty() {
        0.0
    } else {
        e2_ok
            .iter()
            .filter(|t| t.offset_bound_violated() == Some(true))
            .count() as f64
            / e2_ok.len() as f64
    };
    Ok(CoverageReport {
        trials,
        e1_violation_rate: e1 / m,
        e2_violation_rate: e2 / m,
        lemma3_violation_rate: lemma3,
    })
}
