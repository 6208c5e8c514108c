//! Built-in experiment presets.
//!
//! Each preset expands to one or more fully specified experiments on the two
//! reference 10-arm instances (noise scale 0.1, confidence 0.05, 20 trials,
//! horizon 100 000 by default — overridable from the command line):
//!
//! - `fig2_target_pulls` — target-arm pulls of UCB with and without the LCB
//!   attack.
//! - `fig3_cost_vs_sigma` — LCB attack cost as the noise scale sweeps
//!   {0.1, 0.3, 0.5} at a fixed target-to-worst gap of 0.1.
//! - `fig4_cost_vs_gapsum` — LCB attack cost as the target-to-worst gap
//!   sweeps {0.2, 0.6, 0.9} with the noise scale tied to the gap. The
//!   non-target means stay fixed and only the target mean moves, so the
//!   swept gap changes the gap-ratio structure rather than rescaling the
//!   whole problem.
//! - `fig5_moucb_optimal_pulls` / `fig7_moucb_regret` — MOUCB under the LCB
//!   attack, the oracle attack and no attack (fig5 adds a plain-UCB
//!   baseline), with attack cost capped at 2000 and budget bound 3000.
//! - `fig6_ucb_optimal_pulls` / `fig8_ucb_regret` — UCB under the same three
//!   adversaries.
//! - `probe_worst_target` — the LCB attack pointed at the worst arm, where
//!   cheap manipulation is impossible.

use bandit_lab_core::{Arm, AttackerKind, BanditInstance, ExperimentConfig, PolicyKind};

use crate::config::{NamedConfig, DEFAULT_SEED};

/// Means of the attack benchmark instance: best arm 1, worst arm 9 (0.1),
/// target arm 10 (0.2).
pub fn attack_means() -> Vec<f64> {
    vec![1.0, 0.9, 0.8, 0.7, 0.6, 0.5, 0.4, 0.3, 0.1, 0.2]
}

/// Means of the defense benchmark instance: best arm 1, worst arm 7 (0.1),
/// target arm 10 (0.6).
pub fn defense_means() -> Vec<f64> {
    vec![1.0, 0.8, 0.9, 0.5, 0.2, 0.3, 0.1, 0.4, 0.7, 0.6]
}

/// Attack-budget bound handed to MOUCB in the defense presets.
pub const DEFENSE_BUDGET_BOUND: u64 = 3000;

/// Cap on the attacker's manipulations in the defense presets.
pub const DEFENSE_COST_CAP: u64 = 2000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    Fig2TargetPulls,
    Fig3CostVsSigma,
    Fig4CostVsGapSum,
    Fig5MoucbOptimalPulls,
    Fig6UcbOptimalPulls,
    Fig7MoucbRegret,
    Fig8UcbRegret,
    ProbeWorstTarget,
}

impl Preset {
    pub const ALL: [Preset; 8] = [
        Preset::Fig2TargetPulls,
        Preset::Fig3CostVsSigma,
        Preset::Fig4CostVsGapSum,
        Preset::Fig5MoucbOptimalPulls,
        Preset::Fig6UcbOptimalPulls,
        Preset::Fig7MoucbRegret,
        Preset::Fig8UcbRegret,
        Preset::ProbeWorstTarget,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Fig2TargetPulls => "fig2_target_pulls",
            Preset::Fig3CostVsSigma => "fig3_cost_vs_sigma",
            Preset::Fig4CostVsGapSum => "fig4_cost_vs_gapsum",
            Preset::Fig5MoucbOptimalPulls => "fig5_moucb_optimal_pulls",
            Preset::Fig6UcbOptimalPulls => "fig6_ucb_optimal_pulls",
            Preset::Fig7MoucbRegret => "fig7_moucb_regret",
            Preset::Fig8UcbRegret => "fig8_ucb_regret",
            Preset::ProbeWorstTarget => "probe_worst_target",
        }
    }

    fn alias(self) -> &'static str {
        match self {
            Preset::Fig2TargetPulls => "fig2",
            Preset::Fig3CostVsSigma => "fig3",
            Preset::Fig4CostVsGapSum => "fig4",
            Preset::Fig5MoucbOptimalPulls => "fig5",
            Preset::Fig6UcbOptimalPulls => "fig6",
            Preset::Fig7MoucbRegret => "fig7",
            Preset::Fig8UcbRegret => "fig8",
            Preset::ProbeWorstTarget => "probe",
        }
    }
}

impl std::str::FromStr for Preset {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s || p.alias() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Preset::ALL.iter().map(|p| p.name()).collect();
                format!("unknown preset '{s}'; expected one of {}", names.join(", "))
            })
    }
}

impl std::fmt::Display for Preset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Command-line overrides applied uniformly to every expanded config.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Overrides {
    pub horizon: Option<u64>,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
}

fn base(
    name: String,
    means: Vec<f64>,
    sigma: f64,
    agent: PolicyKind,
    attacker: AttackerKind,
    target: usize,
    overrides: &Overrides,
) -> NamedConfig {
    let instance = BanditInstance::gaussian(means, sigma).expect("preset instance is valid");
    let mut config = ExperimentConfig::new(instance, agent, attacker, Arm::new(target).unwrap());
    config.horizon = overrides.horizon.unwrap_or(100_000);
    config.trials = overrides.trials.unwrap_or(20);
    config.master_seed = overrides.seed.unwrap_or(DEFAULT_SEED);
    NamedConfig { name, config }
}

/// Expands a preset into its fully specified experiments. Pure: identical
/// inputs yield identical config lists.
pub fn expand_preset(preset: Preset, overrides: &Overrides) -> Vec<NamedConfig> {
    match preset {
        Preset::Fig2TargetPulls => vec![
            base(
                "fig2_ucb_lcb".into(),
                attack_means(),
                0.1,
                PolicyKind::Ucb,
                AttackerKind::Lcb,
                10,
                overrides,
            ),
            base(
                "fig2_ucb_null".into(),
                attack_means(),
                0.1,
                PolicyKind::Ucb,
                AttackerKind::Null,
                10,
                overrides,
            ),
        ],
        Preset::Fig3CostVsSigma => [0.1, 0.3, 0.5]
            .into_iter()
            .map(|sigma| {
                base(
                    format!("fig3_sigma_{sigma}"),
                    attack_means(),
                    sigma,
                    PolicyKind::Ucb,
                    AttackerKind::Lcb,
                    10,
                    overrides,
                )
            })
            .collect(),
        Preset::Fig4CostVsGapSum => [(0.2, 0.3), (0.6, 0.7), (0.9, 1.0)]
            .into_iter()
            .map(|(gap, target_mean)| {
                // Keep every non-target mean fixed and move only the target:
                // the noise-to-gap ratio stays 1 while the gap-ratio sum
                // actually varies across the sweep.
                let mut means = attack_means();
                means[9] = target_mean;
                base(
                    format!("fig4_gap_{gap}"),
                    means,
                    gap,
                    PolicyKind::Ucb,
                    AttackerKind::Lcb,
                    10,
                    overrides,
                )
            })
            .collect(),
        Preset::Fig5MoucbOptimalPulls => {
            let mut configs = defense_trio("fig5", PolicyKind::Moucb, overrides);
            configs.push(base(
                "fig5_ucb_null".into(),
                defense_means(),
                0.1,
                PolicyKind::Ucb,
                AttackerKind::Null,
                10,
                overrides,
            ));
            configs
        }
        Preset::Fig6UcbOptimalPulls => defense_trio("fig6", PolicyKind::Ucb, overrides),
        Preset::Fig7MoucbRegret => defense_trio("fig7", PolicyKind::Moucb, overrides),
        Preset::Fig8UcbRegret => defense_trio("fig8", PolicyKind::Ucb, overrides),
        Preset::ProbeWorstTarget => vec![base(
            "probe_worst_target".into(),
            attack_means(),
            0.1,
            PolicyKind::Ucb,
            AttackerKind::Lcb,
            9, // the worst arm
            overrides,
        )],
    }
}

/// The defense instance under the LCB attack, the oracle attack and no
/// attack, for the given policy.
fn defense_trio(prefix: &str, agent: PolicyKind, overrides: &Overrides) -> Vec<NamedConfig> {
    let agent_name = match agent {
        PolicyKind::Ucb => "ucb",
        PolicyKind::Moucb => "moucb",
    };
    [AttackerKind::Lcb, AttackerKind::Oracle, AttackerKind::Null]
        .into_iter()
        .map(|attacker| {
            let attacker_name = match attacker {
                AttackerKind::Lcb => "lcb",
                AttackerKind::Oracle => "oracle",
                AttackerKind::Null => "null",
            };
            let mut named = base(
                format!("{prefix}_{agent_name}_{attacker_name}"),
                defense_means(),
                0.1,
                agent,
                attacker,
                10,
                overrides,
            );
            if agent == PolicyKind::Moucb {
                named.config.budget_bound = DEFENSE_BUDGET_BOUND;
            }
            if attacker != AttackerKind::Null {
                named.config.cost_cap = Some(DEFENSE_COST_CAP);
            }
            named
        })
        .collect()
}
