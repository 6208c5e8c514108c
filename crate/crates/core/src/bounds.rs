//! Closed-form evaluators for the high-probability cost and regret bounds,
//! used to compare theory against empirical runs.
//!
//! These take ground-truth gaps, so they live outside the agent/attacker
//! information boundary and are meant for analysis and plotting only.

use crate::agents::confidence_spread;
use crate::env::{Arm, BanditInstance};
use crate::error::{Error, Result};

const PI2: f64 = std::f64::consts::PI * std::f64::consts::PI;

/// Instance summary consumed by the bound evaluators: arm count, noise
/// scale, every gap the formulas need, the confidence parameter, the horizon
/// and the attack-budget bound.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundInputs {
    pub arm_count: usize,
    pub sigma: f64,
    pub delta: f64,
    pub horizon: u64,
    /// Upper bound `A` on the total attack cost (defense side).
    pub budget_bound: u64,
    /// Gap between the target arm and the worst arm.
    pub target_worst_gap: f64,
    /// Gaps `mean(j) - mean(worst)` for every arm `j` other than the worst.
    pub gaps_to_worst: Vec<f64>,
    /// Gaps `mean(best) - mean(a)` for every arm `a` other than the best.
    pub gaps_from_best: Vec<f64>,
    /// Gap between the best arm and the worst arm.
    pub best_worst_gap: f64,
}

impl BoundInputs {
    pub fn from_instance(
        instance: &BanditInstance,
        target: Arm,
        delta: f64,
        horizon: u64,
        budget_bound: u64,
    ) -> Result<Self> {
        let worst = instance.worst_arm();
        let best = instance.best_arm();
        let means = instance.means();
        let gaps_to_worst = means
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != worst.index())
            .map(|(_, &m)| m - means[worst.index()])
            .collect();
        let gaps_from_best = means
            .iter()
            .enumerate()
            .filter(|&(a, _)| a != best.index())
            .map(|(_, &m)| means[best.index()] - m)
            .collect();
        Ok(BoundInputs {
            arm_count: instance.arm_count(),
            sigma: instance.sigma(),
            delta,
            horizon,
            budget_bound,
            target_worst_gap: instance.gap(target, worst)?,
            gaps_to_worst,
            gaps_from_best,
            best_worst_gap: instance.gap(best, worst)?,
        })
    }

    /// Smallest horizon at which the attack-cost bound is stated:
    /// `(pi^2 K / (3 delta))^(2/5)`.
    pub fn cost_bound_min_horizon(&self) -> f64 {
        (PI2 * self.arm_count as f64 / (3.0 * self.delta)).powf(0.4)
    }
}

/// High-probability upper bound on the LCB attack's total cost against UCB
/// at horizon `T`:
///
/// ```text
/// (K-1) / (4 gap_tw^2) * ( X + sqrt(X^2 + 4 gap_tw * S) )^2
/// X = 3 sigma sqrt(ln T) + sqrt(2 sigma^2 K ln(pi^2 T^2 / (3 delta)))
/// S = sum_{j != worst} (8 sigma^2 / gap_jw) * ln(pi^2 K T^2 / (3 delta))
/// ```
///
/// Requires the target not to be the worst arm and `T` at least
/// [`BoundInputs::cost_bound_min_horizon`].
pub fn lcb_attack_cost_bound(inputs: &BoundInputs) -> Result<f64> {
    if inputs.target_worst_gap <= 0.0 {
        return Err(Error::TargetIsWorst {
            gap: inputs.target_worst_gap,
        });
    }
    let t = inputs.horizon as f64;
    if t < inputs.cost_bound_min_horizon() {
        return Err(Error::BoundPrecondition(format!(
            "horizon {t} below the minimum {:.3} for the cost bound",
            inputs.cost_bound_min_horizon()
        )));
    }
    let k = inputs.arm_count as f64;
    let sigma2 = inputs.sigma * inputs.sigma;
    let x = 3.0 * inputs.sigma * t.ln().sqrt()
        + (2.0 * sigma2 * k * (PI2 * t * t / (3.0 * inputs.delta)).ln()).sqrt();
    let log_kt = (PI2 * k * t * t / (3.0 * inputs.delta)).ln();
    let mut contamination = 0.0;
    for &gap in &inputs.gaps_to_worst {
        if gap <= 0.0 {
            return Err(Error::BoundPrecondition(
                "cost bound needs strictly positive gaps to the worst arm".into(),
            ));
        }
        contamination += 8.0 * sigma2 / gap * log_kt;
    }
    let inner = x + (x * x + 4.0 * inputs.target_worst_gap * contamination).sqrt();
    Ok((k - 1.0) / (4.0 * inputs.target_worst_gap * inputs.target_worst_gap) * inner * inner)
}

/// Per-arm additive penalty `8 sqrt(sigma^2 K / A * ln(4 pi^2 A^2 / (3 delta)))`
/// shared by the MOUCB regret bound and the gap-estimate cap.
fn budget_penalty(sigma: f64, arm_count: usize, delta: f64, budget_bound: u64) -> Result<f64> {
    if budget_bound == 0 {
        return Err(Error::BoundPrecondition(
            "budget bound A must be at least 1".into(),
        ));
    }
    let a = budget_bound as f64;
    let arg = 4.0 * PI2 * a * a / (3.0 * delta);
    Ok(8.0 * (sigma * sigma * arm_count as f64 / a * arg.ln()).sqrt())
}

/// High-probability upper bound on MOUCB's pseudo-regret at horizon `T`
/// under any attack of total cost at most `A`:
///
/// ```text
/// sum_{a != best} max{ (8 sigma^2 K / gap_a) ln(pi^2 T^2 / (3 delta)),
///                      A (gap_a + 2 gap_bw + penalty(A)) }
/// ```
///
/// Requires `delta <= 1/3` and `T >= 2 A K`.
pub fn moucb_regret_bound(inputs: &BoundInputs) -> Result<f64> {
    if !(inputs.delta > 0.0 && inputs.delta <= 1.0 / 3.0) {
        return Err(Error::InvalidDelta {
            delta: inputs.delta,
            requirement: "0 < delta <= 1/3",
        });
    }
    let warmup = 2 * inputs.budget_bound * inputs.arm_count as u64;
    if inputs.horizon < warmup {
        return Err(Error::BoundPrecondition(format!(
            "horizon {} below the warm-up length {warmup}",
            inputs.horizon
        )));
    }
    let t = inputs.horizon as f64;
    let k = inputs.arm_count as f64;
    let sigma2 = inputs.sigma * inputs.sigma;
    let penalty = budget_penalty(
        inputs.sigma,
        inputs.arm_count,
        inputs.delta,
        inputs.budget_bound,
    )?;
    let log_t = (PI2 * t * t / (3.0 * inputs.delta)).ln();
    let a_budget = inputs.budget_bound as f64;
    let mut total = 0.0;
    for &gap in &inputs.gaps_from_best {
        if gap <= 0.0 {
            return Err(Error::BoundPrecondition(
                "regret bound needs strictly positive gaps from the best arm".into(),
            ));
        }
        let sampling = 8.0 * sigma2 * k / gap * log_t;
        let attack = a_budget * (gap + 2.0 * inputs.best_worst_gap + penalty);
        total += sampling.max(attack);
    }
    Ok(total)
}

/// The two-sided bracket on the best-to-worst mean gap:
///
/// - `lower_expr = 2 * confidence_spread(means, counts)` is the data-driven
///   over-estimate the MOUCB offset uses; under the cross-count confidence
///   event it is at least the true gap.
/// - `upper_cap = 2 gap_bw + penalty(A)` caps `lower_expr` from above; it
///   needs ground truth and is for omniscient analysis only.
///
/// Requires `delta <= 1/3`, `A >= 1` and every count at least `2 A`.
pub fn gap_estimate_bounds(
    means_hat: &[f64],
    counts: &[u64],
    sigma: f64,
    delta: f64,
    budget_bound: u64,
    best_worst_gap: f64,
) -> Result<(f64, f64)> {
    if !(delta > 0.0 && delta <= 1.0 / 3.0) {
        return Err(Error::InvalidDelta {
            delta,
            requirement: "0 < delta <= 1/3",
        });
    }
    if budget_bound == 0 {
        return Err(Error::BoundPrecondition(
            "budget bound A must be at least 1".into(),
        ));
    }
    if means_hat.len() != counts.len() || means_hat.is_empty() {
        return Err(Error::InvalidConfig(
            "means and counts must be non-empty and of equal length".into(),
        ));
    }
    if counts.iter().any(|&n| n < 2 * budget_bound) {
        return Err(Error::PreWarmup {
            op: "gap_estimate_bounds",
            round: counts.iter().sum(),
            warmup: 2 * budget_bound * counts.len() as u64,
        });
    }
    let lower = 2.0 * confidence_spread(means_hat, counts, sigma, delta)?;
    let upper = 2.0 * best_worst_gap + budget_penalty(sigma, means_hat.len(), delta, budget_bound)?;
    Ok((lower, upper))
}
