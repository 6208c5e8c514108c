//! Bandit policies: plain UCB and the attack-robust MOUCB variant.
//!
//! A policy sees only its own chosen arm and the observed reward; it is never
//! told which arm actually produced the reward. Both policies share the same
//! state layout (per-arm pull counts and reward sums), so the state is a
//! single struct tagged with a [`PolicyKind`].
//!
//! UCB picks the arm maximizing `mean + 3 sigma sqrt(ln t / n)` after one
//! initialization pull per arm.
//!
//! MOUCB assumes a known upper bound `A` on the number of rounds the
//! adversary can alter, pulls every arm `2A` times up front, and afterwards
//! maximizes `mean + radius(n) + offset(n)` where `radius` shrinks the usual
//! way and `offset` caps the estimate bias any `A`-bounded action
//! manipulation can have injected.
//!
//! All logarithms are natural logs and all ties break to the lowest arm
//! index, so selection is a pure function of state.

use crate::env::Arm;
use crate::error::{Error, Result};

/// Which selection rule an [`AgentState`] runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolicyKind {
    Ucb,
    Moucb,
}

impl std::fmt::Display for PolicyKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PolicyKind::Ucb => write!(f, "ucb"),
            PolicyKind::Moucb => write!(f, "moucb"),
        }
    }
}

/// A policy's internal view: per-arm pull counts, per-arm reward sums and the
/// current round. This is the pre-attack view; the sum of counts always
/// equals the round index.
#[derive(Debug, Clone, PartialEq)]
pub struct AgentState {
    kind: PolicyKind,
    sigma: f64,
    delta: f64,
    /// Upper bound `A` on the total attack cost; only MOUCB consults it.
    budget_bound: u64,
    pull_counts: Vec<u64>,
    reward_sums: Vec<f64>,
    round: u64,
}

fn check_delta_open_unit(delta: f64) -> Result<()> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidDelta {
            delta,
            requirement: "0 < delta < 1",
        });
    }
    Ok(())
}

fn check_delta_third(delta: f64) -> Result<()> {
    if !(delta > 0.0 && delta <= 1.0 / 3.0) {
        return Err(Error::InvalidDelta {
            delta,
            requirement: "0 < delta <= 1/3",
        });
    }
    Ok(())
}

/// Argmax over arms with ties to the lowest index. `scores` must be
/// non-empty and free of NaN.
fn argmax_low(scores: impl IntoIterator<Item = f64>) -> Arm {
    let mut best_idx = 0usize;
    let mut best = f64::NEG_INFINITY;
    for (i, s) in scores.into_iter().enumerate() {
        debug_assert!(!s.is_nan());
        if s > best {
            best = s;
            best_idx = i;
        }
    }
    Arm::from_index(best_idx)
}

/// Argmin over pull counts with ties to the lowest index.
fn argmin_count(counts: &[u64]) -> Arm {
    let mut best_idx = 0usize;
    for (i, &c) in counts.iter().enumerate() {
        if c < counts[best_idx] {
            best_idx = i;
        }
    }
    Arm::from_index(best_idx)
}

/// UCB exploration bonus `3 sigma sqrt(ln t / n)` for deciding round `t`.
pub fn ucb_exploration_bonus(round: u64, pulls: u64, sigma: f64) -> f64 {
    3.0 * sigma * ((round as f64).ln() / pulls as f64).sqrt()
}

/// Confidence radius `beta(n) = sqrt(2 sigma^2 K / n * ln(pi^2 n^2 / (3 delta)))`
/// on the drift between a policy's empirical mean and the average true mean
/// of the arms that actually produced its rewards. Strictly decreasing in `n`
/// for `delta <= 1/3`, which the MOUCB warm-up relies on.
pub fn moucb_radius(pulls: u64, sigma: f64, arm_count: usize, delta: f64) -> Result<f64> {
    check_delta_third(delta)?;
    if pulls == 0 {
        return Err(Error::ZeroPullCount);
    }
    let n = pulls as f64;
    let arg = std::f64::consts::PI.powi(2) * n * n / (3.0 * delta);
    Ok((2.0 * sigma * sigma * arm_count as f64 / n * arg.ln()).sqrt())
}

/// Maximum over ordered arm pairs `(i, j)` (including `i = j`) of
/// `mean_i - mean_j + radius(n_i) + radius(n_j)`. This is the policy's
/// data-driven over-estimate of the best-to-worst mean gap.
///
/// Every count must be at least 1.
pub fn confidence_spread(means: &[f64], counts: &[u64], sigma: f64, delta: f64) -> Result<f64> {
    debug_assert_eq!(means.len(), counts.len());
    let k = means.len();
    let mut hi = f64::NEG_INFINITY; // max_i mean_i + radius_i
    let mut lo = f64::NEG_INFINITY; // max_j radius_j - mean_j
    for i in 0..k {
        let r = moucb_radius(counts[i], sigma, k, delta)?;
        hi = hi.max(means[i] + r);
        lo = lo.max(r - means[i]);
    }
    // The max over ordered pairs separates into the two single-arm maxima.
    Ok(hi + lo)
}

impl AgentState {
    /// Fresh UCB agent over `arm_count` arms.
    pub fn new_ucb(arm_count: usize, sigma: f64, delta: f64) -> Result<Self> {
        check_delta_open_unit(delta)?;
        Self::new(PolicyKind::Ucb, arm_count, sigma, delta, 0)
    }

    /// Fresh MOUCB agent with attack-budget bound `budget_bound`.
    pub fn new_moucb(arm_count: usize, sigma: f64, delta: f64, budget_bound: u64) -> Result<Self> {
        check_delta_third(delta)?;
        Self::new(PolicyKind::Moucb, arm_count, sigma, delta, budget_bound)
    }

    fn new(
        kind: PolicyKind,
        arm_count: usize,
        sigma: f64,
        delta: f64,
        budget_bound: u64,
    ) -> Result<Self> {
        if arm_count < 2 {
            return Err(Error::InvalidInstance(format!(
                "need at least 2 arms, got {arm_count}"
            )));
        }
        if sigma <= 0.0 || !sigma.is_finite() {
            return Err(Error::InvalidInstance(format!(
                "sigma must be a positive real, got {sigma}"
            )));
        }
        Ok(AgentState {
            kind,
            sigma,
            delta,
            budget_bound,
            pull_counts: vec![0; arm_count],
            reward_sums: vec![0.0; arm_count],
            round: 0,
        })
    }

    pub fn kind(&self) -> PolicyKind {
        self.kind
    }

    pub fn arm_count(&self) -> usize {
        self.pull_counts.len()
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn budget_bound(&self) -> u64 {
        self.budget_bound
    }

    /// Completed rounds.
    pub fn round(&self) -> u64 {
        self.round
    }

    pub fn pull_counts(&self) -> &[u64] {
        &self.pull_counts
    }

    pub fn reward_sums(&self) -> &[f64] {
        &self.reward_sums
    }

    /// Empirical mean reward of `arm`, or `None` before its first pull.
    pub fn empirical_mean(&self, arm: Arm) -> Option<f64> {
        let i = arm.index();
        (self.pull_counts[i] > 0).then(|| self.reward_sums[i] / self.pull_counts[i] as f64)
    }

    fn empirical_means(&self) -> Result<Vec<f64>> {
        (0..self.arm_count())
            .map(|i| {
                self.empirical_mean(Arm::from_index(i))
                    .ok_or(Error::NotInitialized {
                        op: "empirical_means",
                    })
            })
            .collect()
    }

    /// Length of MOUCB's warm-up phase in rounds (`2 A K`).
    pub fn warmup_rounds(&self) -> u64 {
        2 * self.budget_bound * self.arm_count() as u64
    }

    /// UCB index of `arm` for the round about to be decided:
    /// empirical mean plus `3 sigma sqrt(ln t / n)`.
    pub fn ucb_index(&self, arm: Arm) -> Result<f64> {
        if self.pull_counts.contains(&0) {
            return Err(Error::NotInitialized { op: "ucb_index" });
        }
        let deciding_round = self.round + 1;
        let i = arm.index();
        let mean = self.reward_sums[i] / self.pull_counts[i] as f64;
        Ok(mean + ucb_exploration_bonus(deciding_round, self.pull_counts[i], self.sigma))
    }

    /// UCB selection: one initialization pull per arm in index order, then
    /// the arm with the highest index, ties to the lowest arm.
    pub fn ucb_select(&self) -> Arm {
        let k = self.arm_count() as u64;
        if self.round < k {
            return Arm::from_index(self.round as usize);
        }
        if self.pull_counts.contains(&0) {
            // Unreachable through the engine; keeps selection total.
            return argmin_count(&self.pull_counts);
        }
        argmax_low((0..self.arm_count()).map(|i| {
            self.ucb_index(Arm::from_index(i))
                .expect("all arms initialized")
        }))
    }

    /// MOUCB's attack-offset allowance for `arm`:
    /// `(2 A / n_arm) * confidence_spread`. Only defined once every arm has
    /// its full warm-up count.
    pub fn moucb_offset(&self, arm: Arm) -> Result<f64> {
        let needed = (2 * self.budget_bound).max(1);
        if self.pull_counts.iter().any(|&n| n < needed) {
            return Err(Error::PreWarmup {
                op: "moucb_offset",
                round: self.round,
                warmup: self.warmup_rounds(),
            });
        }
        let spread = confidence_spread(
            &self.empirical_means()?,
            &self.pull_counts,
            self.sigma,
            self.delta,
        )?;
        Ok(2.0 * self.budget_bound as f64 / self.pull_counts[arm.index()] as f64 * spread)
    }

    /// MOUCB selection: while the deciding round is within the warm-up
    /// window (or any arm is unpulled, which covers the degenerate `A = 0`
    /// case), pull the least-pulled arm; afterwards maximize
    /// `mean + radius + offset`. Ties to the lowest arm.
    pub fn moucb_select(&self) -> Arm {
        let deciding_round = self.round + 1;
        if deciding_round <= self.warmup_rounds() || self.pull_counts.contains(&0) {
            return argmin_count(&self.pull_counts);
        }
        let means = self.empirical_means().expect("all arms pulled");
        let spread = confidence_spread(&means, &self.pull_counts, self.sigma, self.delta)
            .expect("counts positive, delta checked at construction");
        let two_a = 2.0 * self.budget_bound as f64;
        argmax_low((0..self.arm_count()).map(|i| {
            let radius = moucb_radius(
                self.pull_counts[i],
                self.sigma,
                self.arm_count(),
                self.delta,
            )
            .expect("counts positive");
            means[i] + radius + two_a / self.pull_counts[i] as f64 * spread
        }))
    }

    /// Selection under this state's policy.
    pub fn select(&self) -> Arm {
        match self.kind {
            PolicyKind::Ucb => self.ucb_select(),
            PolicyKind::Moucb => self.moucb_select(),
        }
    }

    /// Records the observed reward for the arm this policy chose.
    pub fn update(&mut self, chosen_arm: Arm, reward: f64) {
        let i = chosen_arm.index();
        self.pull_counts[i] += 1;
        self.reward_sums[i] += reward;
        self.round += 1;
    }
}
