//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line
//! per clause (run with `--nocapture` to see them) and asserting at the end.
//!
//! All tolerances are pinned here, not tuned at runtime. Two clauses are
//! structurally unattainable at the desk-scale horizon this suite runs at
//! and are expected to stay red; see the assertions in `a05` and `a10` for
//! the measured numbers.

use std::sync::LazyLock;
use std::time::{Duration, Instant};

use bandit_lab::config::NamedConfig;
use bandit_lab::presets::{expand_preset, Overrides, Preset};
use bandit_lab_core::bounds::{
    gap_estimate_bounds, lcb_attack_cost_bound, moucb_regret_bound, BoundInputs,
};
use bandit_lab_core::engine::{coverage_check, run_experiment, ExperimentResult};
use bandit_lab_core::report::aggregate_csv;
use bandit_lab_core::{AgentState, Arm, BanditInstance};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const HORIZON: u64 = 100_000;
const MID_CHECKPOINT: u64 = 10_000;

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn run_named(named: &NamedConfig) -> (String, ExperimentResult) {
    let result = run_experiment(&named.config).expect("experiment runs");
    (named.name.clone(), result)
}

fn find<'a>(results: &'a [(String, ExperimentResult)], name: &str) -> &'a ExperimentResult {
    &results
        .iter()
        .find(|(n, _)| n == name)
        .unwrap_or_else(|| panic!("missing experiment {name}"))
        .1
}

fn final_mean(result: &ExperimentResult, metric: &str) -> f64 {
    result
        .aggregate
        .value(HORIZON, metric)
        .expect("final checkpoint")
        .0
}

fn mid_mean(result: &ExperimentResult, metric: &str) -> f64 {
    result
        .aggregate
        .value(MID_CHECKPOINT, metric)
        .expect("mid checkpoint")
        .0
}

/// The two target-pull experiments plus the wall-clock time they took.
static FIG2: LazyLock<(Vec<(String, ExperimentResult)>, Duration)> = LazyLock::new(|| {
    let start = Instant::now();
    let results = expand_preset(Preset::Fig2TargetPulls, &Overrides::default())
        .iter()
        .map(run_named)
        .collect();
    (results, start.elapsed())
});

/// The MOUCB trio on the defense instance, run omniscient so the gap
/// sandwich and the cell confidence event are observable.
static MOUCB_TRIO: LazyLock<Vec<(String, ExperimentResult)>> = LazyLock::new(|| {
    expand_preset(Preset::Fig7MoucbRegret, &Overrides::default())
        .into_iter()
        .map(|mut named| {
            named.config.omniscient = true;
            run_named(&named)
        })
        .collect()
});

/// Attack success: the LCB attack drives UCB onto the target arm while the
/// no-attack baseline almost never goes there, inside the runtime budget.
#[test]
fn a01_attack_success() {
    let (results, elapsed) = &*FIG2;
    let attacked = find(results, "fig2_ucb_lcb");
    let baseline = find(results, "fig2_ucb_null");
    let frac_attacked = final_mean(attacked, "target_pulls") / HORIZON as f64;
    let frac_baseline = final_mean(baseline, "target_pulls") / HORIZON as f64;
    let ok_attacked = frac_attacked >= 0.90;
    let ok_baseline = frac_baseline <= 0.05;
    let ok_runtime = *elapsed <= Duration::from_secs(60);
    println!(
        "[a01] attack success: {} (target fraction {frac_attacked:.4} >= 0.90); \
         no-attack {} (fraction {frac_baseline:.5} <= 0.05); \
         runtime {} ({:.2?} <= 60s)",
        verdict(ok_attacked),
        verdict(ok_baseline),
        verdict(ok_runtime),
        elapsed
    );
    assert!(ok_attacked, "target fraction {frac_attacked}");
    assert!(ok_baseline, "baseline fraction {frac_baseline}");
    assert!(ok_runtime, "elapsed {elapsed:?}");
}

/// Attack cost grows logarithmically: one decade of rounds multiplies the
/// mean cost by at most 3 (linear growth would give about 10).
#[test]
fn a02_logarithmic_cost_scaling() {
    let (results, _) = &*FIG2;
    let attacked = find(results, "fig2_ucb_lcb");
    let ratio = final_mean(attacked, "cost") / mid_mean(attacked, "cost");
    let ok = ratio <= 3.0;
    println!(
        "[a02] logarithmic cost scaling: {} (cost ratio {ratio:.3} <= 3)",
        verdict(ok)
    );
    assert!(ok, "cost ratio {ratio}");
}

/// The closed-form cost bound dominates the observed cost in at least 88%
/// of 200 trials.
#[test]
fn a03_cost_bound_dominance() {
    let mut named = expand_preset(Preset::Fig2TargetPulls, &Overrides::default())
        .into_iter()
        .next()
        .unwrap();
    assert_eq!(named.name, "fig2_ucb_lcb");
    named.config.trials = 200;
    let result = run_experiment(&named.config).unwrap();
    let inputs = BoundInputs::from_instance(
        &named.config.instance,
        named.config.target_arm,
        named.config.attacker_delta,
        HORIZON,
        0,
    )
    .unwrap();
    let bound = lcb_attack_cost_bound(&inputs).unwrap();
    let dominated = result
        .traces
        .iter()
        .filter(|t| (t.cost() as f64) <= bound)
        .count();
    let rate = dominated as f64 / result.traces.len() as f64;
    let ok = rate >= 0.88;
    println!(
        "[a03] cost bound dominance: {} ({dominated}/200 trials under bound {bound:.1}, rate {rate:.3} >= 0.88)",
        verdict(ok)
    );
    assert!(ok, "dominance rate {rate}");
}

/// Mean attack cost increases strictly along the noise sweep and along the
/// gap sweep.
#[test]
fn a04_monotone_sweeps() {
    let sweep = |preset: Preset| -> Vec<(String, f64)> {
        expand_preset(preset, &Overrides::default())
            .iter()
            .map(|named| {
                let result = run_experiment(&named.config).unwrap();
                (named.name.clone(), final_mean(&result, "cost"))
            })
            .collect()
    };
    let sigma_costs = sweep(Preset::Fig3CostVsSigma);
    let gap_costs = sweep(Preset::Fig4CostVsGapSum);
    let increasing = |v: &[(String, f64)]| v.windows(2).all(|w| w[0].1 < w[1].1);
    let ok_sigma = increasing(&sigma_costs);
    let ok_gap = increasing(&gap_costs);
    println!(
        "[a04] monotone sweeps: noise sweep {} ({:?}); gap sweep {} ({:?})",
        verdict(ok_sigma),
        sigma_costs
            .iter()
            .map(|(_, c)| *c as u64)
            .collect::<Vec<_>>(),
        verdict(ok_gap),
        gap_costs.iter().map(|(_, c)| *c as u64).collect::<Vec<_>>(),
    );
    assert!(
        ok_sigma,
        "noise sweep not strictly increasing: {sigma_costs:?}"
    );
    assert!(ok_gap, "gap sweep not strictly increasing: {gap_costs:?}");
}

/// MOUCB robustness at the reference budget. The within-2x clause holds;
/// the 0.85 optimal-pull fraction and the log-concavity clause cannot hold
/// at this horizon because the warm-up alone occupies 60 000 of the 100 000
/// rounds and the budget-scaled exploration is still unsaturated at 10^5
/// (both hold at 10^7). They are asserted as specified and stay red.
#[test]
fn a05_moucb_robustness() {
    let results = &*MOUCB_TRIO;
    let baseline_regret = final_mean(find(results, "fig7_moucb_null"), "regret");
    let mut all_ok = true;
    for name in ["fig7_moucb_lcb", "fig7_moucb_oracle"] {
        let r = find(results, name);
        let fraction = final_mean(r, "optimal_pulls") / HORIZON as f64;
        let regret_final = final_mean(r, "regret");
        let regret_mid = mid_mean(r, "regret");
        let ok_fraction = fraction >= 0.85;
        let ok_within = regret_final <= 2.0 * baseline_regret;
        let ratio = regret_final / regret_mid;
        let ok_concave = ratio <= 3.0;
        println!(
            "[a05] moucb robustness [{name}]: optimal fraction {} ({fraction:.3} >= 0.85); \
             within-2x-of-no-attack {} ({regret_final:.0} <= 2 x {baseline_regret:.0}); \
             log-concavity {} (ratio {ratio:.2} <= 3)",
            verdict(ok_fraction),
            verdict(ok_within),
            verdict(ok_concave),
        );
        all_ok &= ok_fraction && ok_within && ok_concave;
    }
    assert!(
        all_ok,
        "expected red at horizon 1e5 with budget bound 3000: the 2AK = 60000 \
         round warm-up plus the 2A-scaled exploration keep the optimal-pull \
         fraction near 0.22 and the mid-to-final regret ratio near 6"
    );
}

/// UCB fragility on the same instance: regret grows linearly under both
/// attacks and logarithmically without them.
#[test]
fn a06_ucb_fragility() {
    let results: Vec<(String, ExperimentResult)> =
        expand_preset(Preset::Fig8UcbRegret, &Overrides::default())
            .iter()
            .map(run_named)
            .collect();
    let mut all_ok = true;
    for name in ["fig8_ucb_lcb", "fig8_ucb_oracle"] {
        let r = find(&results, name);
        let ratio = final_mean(r, "regret") / mid_mean(r, "regret");
        let ok = ratio >= 5.0;
        println!(
            "[a06] ucb fragility [{name}]: {} (regret ratio {ratio:.2} >= 5)",
            verdict(ok)
        );
        all_ok &= ok;
    }
    let baseline = find(&results, "fig8_ucb_null");
    let ratio = final_mean(baseline, "regret") / mid_mean(baseline, "regret");
    let ok = ratio <= 3.0;
    println!(
        "[a06] ucb fragility [no attack]: {} (regret ratio {ratio:.2} <= 3)",
        verdict(ok)
    );
    all_ok &= ok;
    assert!(all_ok);
}

/// The closed-form regret bound dominates MOUCB's realized pseudo-regret in
/// at least 92% of 200 trials, under both attacks.
#[test]
fn a07_regret_bound_dominance() {
    let mut all_ok = true;
    for mut named in expand_preset(Preset::Fig7MoucbRegret, &Overrides::default()) {
        if named.name == "fig7_moucb_null" {
            continue;
        }
        named.config.trials = 200;
        let result = run_experiment(&named.config).unwrap();
        let inputs = BoundInputs::from_instance(
            &named.config.instance,
            named.config.target_arm,
            named.config.agent_delta,
            HORIZON,
            named.config.budget_bound,
        )
        .unwrap();
        let bound = moucb_regret_bound(&inputs).unwrap();
        let dominated = result
            .traces
            .iter()
            .filter(|t| t.realized_pseudo_regret() <= bound)
            .count();
        let rate = dominated as f64 / result.traces.len() as f64;
        let ok = rate >= 0.92;
        println!(
            "[a07] regret bound dominance [{}]: {} ({dominated}/200 under bound {bound:.1}, rate {rate:.3} >= 0.92)",
            named.name,
            verdict(ok)
        );
        all_ok &= ok;
    }
    assert!(all_ok);
}

/// Confidence-event coverage over 1000 omniscient trials: both event
/// violation rates within delta plus Monte Carlo slack, and the offset
/// bound never fails when the cell event holds.
#[test]
fn a08_event_coverage() {
    let mut named = expand_preset(Preset::Fig2TargetPulls, &Overrides::default())
        .into_iter()
        .next()
        .unwrap();
    named.config.horizon = 10_000;
    let report = coverage_check(&named.config, 1000).unwrap();
    let allowed = 0.05 + 3.0 * (0.05f64 / 1000.0).sqrt();
    let ok_e1 = report.e1_violation_rate <= allowed;
    let ok_e2 = report.e2_violation_rate <= allowed;
    let ok_l3 = report.lemma3_violation_rate == 0.0;
    println!(
        "[a08] event coverage: e1 {} ({:.4} <= {allowed:.4}); e2 {} ({:.4} <= {allowed:.4}); \
         offset-bound-given-e2 {} ({} == 0)",
        verdict(ok_e1),
        report.e1_violation_rate,
        verdict(ok_e2),
        report.e2_violation_rate,
        verdict(ok_l3),
        report.lemma3_violation_rate,
    );
    assert!(ok_e1 && ok_e2 && ok_l3, "{report:?}");
}

/// Gap-estimate sandwich: at every post-warm-up checkpoint of every trial
/// satisfying the cell confidence event, the data-driven gap over-estimate
/// sits between the true best-to-worst gap and the analytic cap.
#[test]
fn a09_gap_estimate_sandwich() {
    let results = &*MOUCB_TRIO;
    let defense = BanditInstance::gaussian(bandit_lab::presets::defense_means(), 0.1).unwrap();
    let true_gap = defense
        .gap(defense.best_arm(), defense.worst_arm())
        .unwrap();
    let (_, upper_cap) =
        gap_estimate_bounds(&[0.0; 10], &[6000; 10], 0.1, 0.05, 3000, true_gap).unwrap();
    let warmup = 2 * 3000 * 10;
    let mut all_ok = true;
    for name in ["fig7_moucb_lcb", "fig7_moucb_oracle"] {
        let result = find(results, name);
        let mut checked = 0usize;
        let mut ok = true;
        let mut range = (f64::MAX, f64::MIN);
        for trace in result
            .traces
            .iter()
            .filter(|t| t.e2_violated() == Some(false))
        {
            for cp in trace.checkpoints().iter().filter(|c| c.round > warmup) {
                let lower = cp.gap_over_estimate.expect("omniscient checkpoint");
                ok &= true_gap <= lower && lower <= upper_cap;
                range = (range.0.min(lower), range.1.max(lower));
                checked += 1;
            }
        }
        println!(
            "[a09] gap sandwich [{name}]: {} ({checked} checkpoints, \
             {true_gap} <= [{:.3}, {:.3}] <= {upper_cap:.4})",
            verdict(ok && checked > 0),
            range.0,
            range.1,
        );
        all_ok &= ok && checked > 0;
    }
    assert!(all_ok);
}

/// Probe with the target set to the worst arm: manipulation stays cheap per
/// round but cannot be profitable — the user never locks onto the target
/// (fraction < 0.5) and the cost blows far past the logarithmic budget. The
/// specified margin (10x the bound computed with the smallest positive gap)
/// exceeds the horizon itself at this scale, so that clause stays red: the
/// measured cost is about 0.9 T against a demanded 2.04 T.
#[test]
fn a10_worst_target_probe() {
    let named = expand_preset(Preset::ProbeWorstTarget, &Overrides::default())
        .into_iter()
        .next()
        .unwrap();
    let result = run_experiment(&named.config).unwrap();
    let cost = final_mean(&result, "cost");
    let fraction = final_mean(&result, "target_pulls") / HORIZON as f64;

    // Smallest positive gap in the instance is 0.1, realized by the regular
    // target arm against the worst arm; evaluating the cost bound there
    // reproduces the budget a non-worst target would enjoy.
    let inst = &named.config.instance;
    let smallest_gap_target = Arm::new(10).unwrap();
    let inputs = BoundInputs::from_instance(inst, smallest_gap_target, 0.05, HORIZON, 0).unwrap();
    let bound = lcb_attack_cost_bound(&inputs).unwrap();

    let ok_fraction = fraction < 0.5;
    let ok_cost = cost > 10.0 * bound;
    println!(
        "[a10] worst-target probe: cost blow-up {} (mean cost {cost:.0} > 10 x {bound:.0} = {:.0}); \
         no lock-in {} (target fraction {fraction:.3} < 0.5)",
        verdict(ok_cost),
        10.0 * bound,
        verdict(ok_fraction),
    );
    assert!(
        ok_cost && ok_fraction,
        "expected red: the demanded cost 10 x {bound:.0} exceeds the horizon {HORIZON}, \
         while any realizable cost is at most the horizon (measured {cost:.0})"
    );
}

/// Determinism: the same seed yields byte-identical CSV regardless of the
/// thread count, both through the library and through the binary.
#[test]
fn a11_deterministic_output() {
    let mut named = expand_preset(Preset::Fig2TargetPulls, &Overrides::default())
        .into_iter()
        .next()
        .unwrap();
    named.config.horizon = 20_000;
    named.config.trials = 8;
    let csv_with = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| aggregate_csv(&run_experiment(&named.config).unwrap().aggregate))
    };
    let single = csv_with(1);
    let multi = csv_with(4);
    let ok_lib = single == multi;

    let dir = tempfile::tempdir().unwrap();
    let cfg_path = dir.path().join("exp.cfg");
    std::fs::write(
        &cfg_path,
        "name = determinism\n\
         means = 1.0, 0.9, 0.8, 0.7, 0.6, 0.5, 0.4, 0.3, 0.1, 0.2\n\
         sigma = 0.1\n\
         agent = ucb\n\
         attacker = lcb\n\
         horizon = 20000\n\
         trials = 8\n\
         seed = 42\n",
    )
    .unwrap();
    let run_binary = |threads: &str, sub: &str| {
        let out = dir.path().join(sub);
        let status = std::process::Command::new(env!("CARGO_BIN_EXE_bandit-lab"))
            .args([
                "run",
                "--config",
                cfg_path.to_str().unwrap(),
                "--threads",
                threads,
                "--out",
                out.to_str().unwrap(),
            ])
            .stdout(std::process::Stdio::null())
            .status()
            .unwrap();
        assert!(status.success());
        std::fs::read(out.join("determinism.csv")).unwrap()
    };
    let bytes_one = run_binary("1", "one");
    let bytes_four = run_binary("4", "four");
    let ok_bin = bytes_one == bytes_four;
    let ok_lib_vs_bin = bytes_one == single.as_bytes();
    println!(
        "[a11] determinism: library across thread pools {}; binary across --threads {}; \
         library vs binary {}",
        verdict(ok_lib),
        verdict(ok_bin),
        verdict(ok_lib_vs_bin),
    );
    assert!(ok_lib && ok_bin && ok_lib_vs_bin);
}

mod reference {
    //! Independently written evaluators for the formula regression: same
    //! mathematics, different algebraic arrangement (logs split, explicit
    //! pair enumeration, reversed summation).

    pub const PI2: f64 = std::f64::consts::PI * std::f64::consts::PI;

    pub fn cb(n: u64, sigma: f64, k: usize, delta: f64) -> f64 {
        let n = n as f64;
        let log_term = (PI2 * k as f64 / (3.0 * delta)).ln() + 2.0 * n.ln();
        (2.0 * sigma * sigma / n * log_term).sqrt()
    }

    pub fn beta(n: u64, sigma: f64, k: usize, delta: f64) -> f64 {
        let n = n as f64;
        let log_term = (PI2 / (3.0 * delta)).ln() + 2.0 * n.ln();
        (2.0 * sigma * sigma * k as f64 / n * log_term).sqrt()
    }

    pub fn spread(means: &[f64], counts: &[u64], sigma: f64, delta: f64) -> f64 {
        let k = means.len();
        let mut best = f64::NEG_INFINITY;
        for i in 0..k {
            for j in 0..k {
                let v = means[i] - means[j]
                    + beta(counts[i], sigma, k, delta)
                    + beta(counts[j], sigma, k, delta);
                best = best.max(v);
            }
        }
        best
    }

    #[allow(clippy::too_many_arguments)]
    pub fn cost_bound(
        k: usize,
        sigma: f64,
        delta: f64,
        horizon: u64,
        target_worst_gap: f64,
        gaps_to_worst: &[f64],
    ) -> f64 {
        let t = horizon as f64;
        let kf = k as f64;
        let x = 3.0 * sigma * t.ln().sqrt()
            + (2.0 * sigma * sigma * kf * ((PI2 / (3.0 * delta)).ln() + 2.0 * t.ln())).sqrt();
        let log_kt = (PI2 * kf / (3.0 * delta)).ln() + 2.0 * t.ln();
        let mut s = 0.0;
        for gap in gaps_to_worst.iter().rev() {
            s += 8.0 * sigma * sigma * log_kt / gap;
        }
        let inner = x + (x.powi(2) + 4.0 * target_worst_gap * s).sqrt();
        (kf - 1.0) * inner.powi(2) / (4.0 * target_worst_gap.powi(2))
    }

    pub fn regret_bound(
        k: usize,
        sigma: f64,
        delta: f64,
        horizon: u64,
        budget: u64,
        gaps_from_best: &[f64],
        best_worst_gap: f64,
    ) -> f64 {
        let t = horizon as f64;
        let kf = k as f64;
        let a = budget as f64;
        let penalty = 8.0
            * (sigma * sigma * kf / a * ((4.0 * PI2 / (3.0 * delta)).ln() + 2.0 * a.ln())).sqrt();
        let log_t = (PI2 / (3.0 * delta)).ln() + 2.0 * t.ln();
        let mut total = 0.0;
        for gap in gaps_from_best.iter().rev() {
            let sampling = 8.0 * sigma * sigma * kf * log_t / gap;
            let attack = a * (gap + 2.0 * best_worst_gap + penalty);
            total += if sampling > attack { sampling } else { attack };
        }
        total
    }
}

/// Formula regression: implementation against the independent evaluators on
/// 100 random valid inputs each, to relative error 1e-10.
#[test]
fn a12_formula_regression() {
    use bandit_lab_core::agents::moucb_radius;
    use bandit_lab_core::attackers::confidence_radius;

    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE97);
    let rel = |a: f64, b: f64| (a - b).abs() / b.abs().max(1e-30);
    let mut worst: f64 = 0.0;

    for _ in 0..100 {
        // Attacker-side confidence radius.
        let n = rng.random_range(1..1_000_000_000u64);
        let sigma = rng.random_range(0.01..3.0);
        let k = rng.random_range(1..64usize);
        let delta = rng.random_range(0.001..0.999);
        worst = worst.max(rel(
            confidence_radius(n, sigma, k, delta).unwrap(),
            reference::cb(n, sigma, k, delta),
        ));

        // Policy-side offset radius.
        let delta3 = rng.random_range(0.001..(1.0 / 3.0));
        let k2 = rng.random_range(2..64usize);
        worst = worst.max(rel(
            moucb_radius(n, sigma, k2, delta3).unwrap(),
            reference::beta(n, sigma, k2, delta3),
        ));

        // Offset allowance on a synthetic policy state.
        let arms = rng.random_range(2..8usize);
        let budget = rng.random_range(1..5u64);
        let mut agent = AgentState::new_moucb(arms, sigma, delta3, budget).unwrap();
        let mut means = Vec::new();
        let mut counts = Vec::new();
        for arm in 0..arms {
            let mean = rng.random_range(-2.0..2.0);
            let count = rng.random_range(2 * budget..2 * budget + 200);
            for _ in 0..count {
                agent.update(Arm::from_index(arm), mean);
            }
            counts.push(count);
            means.push(agent.empirical_mean(Arm::from_index(arm)).unwrap());
        }
        let candidate = Arm::from_index(rng.random_range(0..arms));
        let gamma = agent.moucb_offset(candidate).unwrap();
        let gamma_ref = 2.0 * budget as f64 / counts[candidate.index()] as f64
            * reference::spread(&means, &counts, sigma, delta3);
        worst = worst.max(rel(gamma, gamma_ref));

        // Bound evaluators on a random instance with distinct means.
        let k3 = rng.random_range(3..12usize);
        let mut inst_means: Vec<f64> = Vec::with_capacity(k3);
        let mut level = rng.random_range(1.0..3.0);
        for _ in 0..k3 {
            inst_means.push(level);
            level -= rng.random_range(0.05..0.5);
        }
        let target_idx = rng.random_range(0..k3 - 1); // never the worst (last)
        let inst = BanditInstance::gaussian(inst_means.clone(), sigma).unwrap();
        let budget2 = rng.random_range(1..200u64);
        let min_t = (reference::PI2 * k3 as f64 / (3.0 * delta3))
            .powf(0.4)
            .ceil() as u64;
        let horizon = rng
            .random_range(1_000..100_000_000u64)
            .max(min_t)
            .max(2 * budget2 * k3 as u64);
        let inputs = BoundInputs::from_instance(
            &inst,
            Arm::from_index(target_idx),
            delta3,
            horizon,
            budget2,
        )
        .unwrap();
        let worst_mean = *inst_means.last().unwrap();
        let gaps_to_worst: Vec<f64> = inst_means[..k3 - 1]
            .iter()
            .map(|m| m - worst_mean)
            .collect();
        worst = worst.max(rel(
            lcb_attack_cost_bound(&inputs).unwrap(),
            reference::cost_bound(
                k3,
                sigma,
                delta3,
                horizon,
                inst_means[target_idx] - worst_mean,
                &gaps_to_worst,
            ),
        ));
        let gaps_from_best: Vec<f64> = inst_means[1..].iter().map(|m| inst_means[0] - m).collect();
        worst = worst.max(rel(
            moucb_regret_bound(&inputs).unwrap(),
            reference::regret_bound(
                k3,
                sigma,
                delta3,
                horizon,
                budget2,
                &gaps_from_best,
                inst_means[0] - worst_mean,
            ),
        ));
    }
    let ok = worst <= 1e-10;
    println!(
        "[a12] formula regression: {} (worst relative error {worst:.3e} <= 1e-10)",
        verdict(ok)
    );
    assert!(ok, "worst relative error {worst}");
}
