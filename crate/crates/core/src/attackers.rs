//! Action-manipulation adversaries.
//!
//! An attacker sits between the policy and the environment: each round it
//! maps the policy's chosen arm to the arm actually executed. Three kinds
//! are provided:
//!
//! - `Null`: passes every choice through (baseline).
//! - `Oracle`: knows the true means; redirects every non-target choice to
//!   the worst arm. The only component allowed to peek at ground truth.
//! - `Lcb`: learns the worst arm online; leaves the first `K` rounds and
//!   all target-arm choices alone, and redirects anything else to the arm
//!   with the lowest empirical lower confidence bound
//!   `mean - confidence_radius(n)`.
//!
//! The attacker keeps its own post-attack counters, which (unlike the
//! policy's) estimate the true means. An attack is counted only when the
//! executed arm actually differs from the chosen one, so a redirect that
//! lands on the chosen arm itself costs nothing; an optional cost cap stops
//! further manipulation once the budget is spent.

use crate::env::{Arm, BanditInstance};
use crate::error::{Error, Result};

/// Which manipulation rule an [`AttackerState`] runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AttackerKind {
    Null,
    Oracle,
    Lcb,
}

impl std::fmt::Display for AttackerKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AttackerKind::Null => write!(f, "null"),
            AttackerKind::Oracle => write!(f, "oracle"),
            AttackerKind::Lcb => write!(f, "lcb"),
        }
    }
}

/// Confidence radius `CB(n) = sqrt(2 sigma^2 / n * ln(pi^2 K n^2 / (3 delta)))`
/// used by the LCB rule. Defined for `n >= 1` and `delta` in `(0, 1)`.
pub fn confidence_radius(pulls: u64, sigma: f64, arm_count: usize, delta: f64) -> Result<f64> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidDelta {
            delta,
            requirement: "0 < delta < 1",
        });
    }
    if pulls == 0 {
        return Err(Error::ZeroPullCount);
    }
    let n = pulls as f64;
    let arg = std::f64::consts::PI.powi(2) * arm_count as f64 * n * n / (3.0 * delta);
    Ok((2.0 * sigma * sigma / n * arg.ln()).sqrt())
}

/// Adversary state: post-attack pull counts and reward sums (the attacker's
/// unbiased view of the environment), the target arm, and the manipulation
/// budget already spent.
#[derive(Debug, Clone, PartialEq)]
pub struct AttackerState {
    kind: AttackerKind,
    target: Arm,
    sigma: f64,
    delta: f64,
    post_counts: Vec<u64>,
    post_sums: Vec<f64>,
    round: u64,
    /// Resolved at construction from ground truth; oracle only.
    worst_arm: Option<Arm>,
    cost_cap: Option<u64>,
    attacks_made: u64,
}

impl AttackerState {
    pub fn new_null(arm_count: usize, target: Arm, sigma: f64, delta: f64) -> Result<Self> {
        Self::new(
            AttackerKind::Null,
            arm_count,
            target,
            sigma,
            delta,
            None,
            None,
        )
    }

    /// Oracle attacker; resolves the worst arm from the instance.
    pub fn new_oracle(
        instance: &BanditInstance,
        target: Arm,
        delta: f64,
        cost_cap: Option<u64>,
    ) -> Result<Self> {
        Self::new(
            AttackerKind::Oracle,
            instance.arm_count(),
            target,
            instance.sigma(),
            delta,
            Some(instance.worst_arm()),
            cost_cap,
        )
    }

    pub fn new_lcb(
        arm_count: usize,
        target: Arm,
        sigma: f64,
        delta: f64,
        cost_cap: Option<u64>,
    ) -> Result<Self> {
        Self::new(
            AttackerKind::Lcb,
            arm_count,
            target,
            sigma,
            delta,
            None,
            cost_cap,
        )
    }

    fn new(
        kind: AttackerKind,
        arm_count: usize,
        target: Arm,
        sigma: f64,
        delta: f64,
        worst_arm: Option<Arm>,
        cost_cap: Option<u64>,
    ) -> Result<Self> {
        if arm_count < 2 {
            return Err(Error::InvalidInstance(format!(
                "need at least 2 arms, got {arm_count}"
            )));
        }
        if target.get() > arm_count {
            return Err(Error::ArmOutOfRange {
                arm: target.get(),
                arm_count,
            });
        }
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::InvalidDelta {
                delta,
                requirement: "0 < delta < 1",
            });
        }
        Ok(AttackerState {
            kind,
            target,
            sigma,
            delta,
            post_counts: vec![0; arm_count],
            post_sums: vec![0.0; arm_count],
            round: 0,
            worst_arm,
            cost_cap,
            attacks_made: 0,
        })
    }

    pub fn kind(&self) -> AttackerKind {
        self.kind
    }

    pub fn target(&self) -> Arm {
        self.target
    }

    pub fn arm_count(&self) -> usize {
        self.post_counts.len()
    }

    pub fn round(&self) -> u64 {
        self.round
    }

    pub fn post_counts(&self) -> &[u64] {
        &self.post_counts
    }

    pub fn post_sums(&self) -> &[f64] {
        &self.post_sums
    }

    /// Manipulations performed so far (rounds where the executed arm
    /// differed from the chosen one).
    pub fn attacks_made(&self) -> u64 {
        self.attacks_made
    }

    /// Empirical mean of post-attack arm pulls, or `None` before the first.
    pub fn post_mean(&self, arm: Arm) -> Option<f64> {
        let i = arm.index();
        (self.post_counts[i] > 0).then(|| self.post_sums[i] / self.post_counts[i] as f64)
    }

    fn budget_left(&self) -> bool {
        self.cost_cap.is_none_or(|cap| self.attacks_made < cap)
    }

    /// Lower confidence bound of `arm` in the attacker's view; unpulled arms
    /// rank lowest so the redirect explores them first.
    fn lcb(&self, arm: Arm) -> f64 {
        let i = arm.index();
        if self.post_counts[i] == 0 {
            return f64::NEG_INFINITY;
        }
        let mean = self.post_sums[i] / self.post_counts[i] as f64;
        let radius = confidence_radius(
            self.post_counts[i],
            self.sigma,
            self.arm_count(),
            self.delta,
        )
        .expect("count positive, delta checked at construction");
        mean - radius
    }

    /// Maps the chosen arm to the executed arm for the round being decided.
    pub fn attack(&self, chosen_arm: Arm) -> Arm {
        match self.kind {
            AttackerKind::Null => chosen_arm,
            AttackerKind::Oracle => {
                if chosen_arm == self.target || !self.budget_left() {
                    chosen_arm
                } else {
                    self.worst_arm.expect("oracle resolves the worst arm")
                }
            }
            AttackerKind::Lcb => {
                let deciding_round = self.round + 1;
                if deciding_round <= self.arm_count() as u64
                    || chosen_arm == self.target
                    || !self.budget_left()
                {
                    return chosen_arm;
                }
                let mut best = Arm::from_index(0);
                let mut best_lcb = self.lcb(best);
                for i in 1..self.arm_count() {
                    let arm = Arm::from_index(i);
                    let v = self.lcb(arm);
                    if v < best_lcb {
                        best_lcb = v;
                        best = arm;
                    }
                }
                best
            }
        }
    }

    /// Records the executed arm and its reward.
    pub fn update(&mut self, chosen_arm: Arm, post_arm: Arm, reward: f64) {
        let i = post_arm.index();
        self.post_counts[i] += 1;
        self.post_sums[i] += reward;
        self.round += 1;
        if post_arm != chosen_arm {
            self.attacks_made += 1;
        }
    }
}
