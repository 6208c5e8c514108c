//! The command-line front end.
//!
//! Subcommands:
//!
//! - `run <preset> | run --config FILE` — run experiments, write one CSV per
//!   experiment under `--out`, optionally render SVG plots.
//! - `bounds --config FILE` — evaluate the closed-form attack-cost and
//!   regret bound curves at every checkpoint of the config.
//! - `coverage --config FILE --trials M` — estimate the violation rates of
//!   the confidence events over `M` omniscient trials.
//!
//! Exit codes: 0 on success, 2 on configuration errors (including malformed
//! config files, reported with line numbers), 1 on anything else.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use bandit_lab_core::bounds::{lcb_attack_cost_bound, moucb_regret_bound, BoundInputs};
use bandit_lab_core::engine::{coverage_check, run_experiment, run_trial_logged};
use bandit_lab_core::report::{aggregate_csv, bound_curve_csv, coverage_csv};

use crate::config::{load_config, NamedConfig};
use crate::plot::write_plots;
use crate::presets::{expand_preset, Overrides, Preset};

#[derive(Parser)]
#[command(
    name = "bandit-lab",
    about = "Simulation lab for action-manipulation attacks on stochastic bandits",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a preset or a config file and write per-experiment CSVs.
    Run {
        /// Preset name: fig2_target_pulls .. fig8_ucb_regret or
        /// probe_worst_target (short forms fig2..fig8, probe).
        preset: Option<String>,
        /// Experiment config file (alternative to a preset).
        #[arg(long, value_name = "FILE")]
        config: Option<PathBuf>,
        #[command(flatten)]
        common: CommonOpts,
        /// Also stream per-round records (t,chosen,post,reward) to
        /// <name>_trial<id>_rounds.csv, one file per trial.
        #[arg(long)]
        debug_rounds: bool,
    },
    /// Evaluate the closed-form bound curves for a config.
    Bounds {
        #[arg(long, value_name = "FILE")]
        config: PathBuf,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Estimate confidence-event violation rates over many trials.
    Coverage {
        #[arg(long, value_name = "FILE")]
        config: PathBuf,
        #[command(flatten)]
        common: CommonOpts,
    },
}

#[derive(Args)]
struct CommonOpts {
    /// Override the number of rounds per trial.
    #[arg(long)]
    horizon: Option<u64>,
    /// Override the number of trials (for coverage: the Monte Carlo count).
    #[arg(long)]
    trials: Option<u64>,
    /// Override the master seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory for CSVs and plots.
    #[arg(long, default_value = "results")]
    out: PathBuf,
    /// Worker threads (default: all cores; env BANDIT_LAB_THREADS).
    #[arg(long)]
    threads: Option<usize>,
    /// Render SVG plots next to the CSVs.
    #[arg(long)]
    plot: bool,
}

enum CliError {
    Config(String),
    Other(anyhow::Error),
}

impl From<anyhow::Error> for CliError {
    fn from(e: anyhow::Error) -> Self {
        CliError::Other(e)
    }
}

impl From<crate::config::ConfigError> for CliError {
    fn from(e: crate::config::ConfigError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<bandit_lab_core::Error> for CliError {
    fn from(e: bandit_lab_core::Error) -> Self {
        CliError::Config(e.to_string())
    }
}

/// Parses `args` (including the program name) and runs the tool.
/// Returns the process exit code.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(CliError::Config(msg)) => {
            eprintln!("config error: {msg}");
            2
        }
        Err(CliError::Other(e)) => {
            eprintln!("error: {e:#}");
            1
        }
    }
}

fn init_threads(requested: Option<usize>) {
    let threads = requested.or_else(|| {
        std::env::var("BANDIT_LAB_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    if let Some(n) = threads {
        // Ignore the error if a pool was already installed (tests, repeats).
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Run {
            preset,
            config,
            common,
            debug_rounds,
        } => cmd_run(preset, config, common, debug_rounds),
        Command::Bounds { config, common } => cmd_bounds(config, common),
        Command::Coverage { config, common } => cmd_coverage(config, common),
    }
}

fn gather_configs(
    preset: Option<String>,
    config: Option<PathBuf>,
    common: &CommonOpts,
) -> Result<Vec<NamedConfig>, CliError> {
    let overrides = Overrides {
        horizon: common.horizon,
        trials: common.trials,
        seed: common.seed,
    };
    match (preset, config) {
        (Some(p), None) => {
            let preset: Preset = p.parse().map_err(CliError::Config)?;
            Ok(expand_preset(preset, &overrides))
        }
        (None, Some(path)) => {
            let mut named = load_config(&path)?;
            apply_overrides(&mut named, &overrides);
            Ok(vec![named])
        }
        (Some(_), Some(_)) => Err(CliError::Config(
            "give either a preset or --config, not both".into(),
        )),
        (None, None) => Err(CliError::Config(
            "nothing to run: give a preset or --config FILE".into(),
        )),
    }
}

fn apply_overrides(named: &mut NamedConfig, overrides: &Overrides) {
    if let Some(h) = overrides.horizon {
        named.config.horizon = h;
    }
    if let Some(t) = overrides.trials {
        named.config.trials = t;
    }
    if let Some(s) = overrides.seed {
        named.config.master_seed = s;
    }
}

fn ensure_out_dir(common: &CommonOpts) -> Result<(), CliError> {
    std::fs::create_dir_all(&common.out)
        .map_err(|e| CliError::Other(anyhow::anyhow!("creating {}: {e}", common.out.display())))
}

fn write_file(path: &PathBuf, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents)
        .map_err(|e| CliError::Other(anyhow::anyhow!("writing {}: {e}", path.display())))
}

fn cmd_run(
    preset: Option<String>,
    config: Option<PathBuf>,
    common: CommonOpts,
    debug_rounds: bool,
) -> Result<(), CliError> {
    init_threads(common.threads);
    let configs = gather_configs(preset, config, &common)?;
    ensure_out_dir(&common)?;
    for named in &configs {
        named.config.validate()?;
        for warning in named.config.warnings() {
            eprintln!("warning [{}]: {warning}", named.name);
        }
    }
    for named in &configs {
        let result = run_experiment(&named.config)?;
        let csv_path = common.out.join(format!("{}.csv", named.name));
        write_file(&csv_path, &aggregate_csv(&result.aggregate))?;
        if common.plot {
            write_plots(&common.out, &named.name, &result.aggregate)?;
        }
        if debug_rounds {
            for trial in 0..named.config.trials {
                let log_path = common
                    .out
                    .join(format!("{}_trial{trial}_rounds.csv", named.name));
                let mut buf = Vec::new();
                run_trial_logged(&named.config, trial, &mut buf)?;
                write_file(&log_path, &String::from_utf8_lossy(&buf))?;
            }
        }
        let horizon = named.config.horizon;
        let agg = &result.aggregate;
        let line = |metric: &str| -> String {
            match agg.value(horizon, metric) {
                Some((mean, std)) => format!("{metric}={mean:.1}+-{std:.1}"),
                None => format!("{metric}=?"),
            }
        };
        println!(
            "{}: T={horizon} trials={} {} {} {} {} -> {}",
            named.name,
            named.config.trials,
            line("cost"),
            line("regret"),
            line("target_pulls"),
            line("optimal_pulls"),
            csv_path.display()
        );
    }
    Ok(())
}

fn cmd_bounds(config: PathBuf, common: CommonOpts) -> Result<(), CliError> {
    let mut named = load_config(&config)?;
    apply_overrides(
        &mut named,
        &Overrides {
            horizon: common.horizon,
            trials: common.trials,
            seed: common.seed,
        },
    );
    named.config.validate()?;
    ensure_out_dir(&common)?;

    let cfg = &named.config;
    let target_not_worst = cfg.instance.gap(cfg.target_arm, cfg.instance.worst_arm())? > 0.0;
    let regret_bound_applies = cfg.budget_bound >= 1 && cfg.agent_delta <= 1.0 / 3.0;
    if !target_not_worst && !regret_bound_applies {
        return Err(CliError::Config(
            "no bound applies: target is the worst arm and no positive budget_bound is set".into(),
        ));
    }

    let mut points: Vec<(u64, &str, f64)> = Vec::new();
    for round in cfg.checkpoint_schedule() {
        if target_not_worst {
            let inputs = BoundInputs::from_instance(
                &cfg.instance,
                cfg.target_arm,
                cfg.attacker_delta,
                round,
                cfg.budget_bound,
            )?;
            if let Ok(v) = lcb_attack_cost_bound(&inputs) {
                points.push((round, "bound_cost_thm1", v));
            }
        }
        if regret_bound_applies {
            let inputs = BoundInputs::from_instance(
                &cfg.instance,
                cfg.target_arm,
                cfg.agent_delta,
                round,
                cfg.budget_bound,
            )?;
            if let Ok(v) = moucb_regret_bound(&inputs) {
                points.push((round, "bound_regret_thm3", v));
            }
        }
    }
    if points.is_empty() {
        return Err(CliError::Config(
            "no checkpoint satisfies the bound preconditions".into(),
        ));
    }
    let path = common.out.join(format!("{}_bounds.csv", named.name));
    write_file(&path, &bound_curve_csv(&points))?;
    let last_cost = points
        .iter()
        .rev()
        .find(|p| p.1 == "bound_cost_thm1")
        .map(|p| format!("bound_cost_thm1={:.1}", p.2))
        .unwrap_or_default();
    let last_regret = points
        .iter()
        .rev()
        .find(|p| p.1 == "bound_regret_thm3")
        .map(|p| format!("bound_regret_thm3={:.1}", p.2))
        .unwrap_or_default();
    println!(
        "{}: T={} {last_cost} {last_regret} -> {}",
        named.name,
        cfg.horizon,
        path.display()
    );
    Ok(())
}

fn cmd_coverage(config: PathBuf, common: CommonOpts) -> Result<(), CliError> {
    init_threads(common.threads);
    let mut named = load_config(&config)?;
    apply_overrides(
        &mut named,
        &Overrides {
            horizon: common.horizon,
            trials: None,
            seed: common.seed,
        },
    );
    let trials = common.trials.unwrap_or(1000);
    ensure_out_dir(&common)?;
    let report = coverage_check(&named.config, trials)?;
    let path = common.out.join(format!("{}_coverage.csv", named.name));
    write_file(&path, &coverage_csv(named.config.horizon, &report))?;
    println!(
        "{}: trials={trials} e1_violation_rate={:.4} e2_violation_rate={:.4} lemma3_violation_rate={:.4} -> {}",
        named.name,
        report.e1_violation_rate,
        report.e2_violation_rate,
        report.lemma3_violation_rate,
        path.display()
    );
    Ok(())
}
