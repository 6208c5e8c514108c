//! Flat key=value experiment config files.
//!
//! One key per line, `#` starts a comment, lists are comma-separated:
//!
//! ```text
//! name = demo
//! means = 1.0, 0.9, 0.8, 0.7, 0.6, 0.5, 0.4, 0.3, 0.1, 0.2
//! sigma = 0.1
//! agent = ucb            # ucb | moucb
//! attacker = lcb         # null | oracle | lcb
//! target = 10            # defaults to the last arm
//! delta = 0.05
//! horizon = 100000
//! trials = 20
//! seed = 42
//! # budget_bound = 3000  # MOUCB's attack-cost bound A
//! # cost_cap = 2000      # stop attacking after this many manipulations
//! # agent_delta / attacker_delta override delta per side
//! # checkpoints = 100, 1000, 10000  # explicit checkpoint rounds
//! ```
//!
//! Parse errors carry the offending line number.

use std::collections::HashMap;
use std::path::Path;

use bandit_lab_core::{
    Arm, AttackerKind, BanditInstance, DistributionKind, ExperimentConfig, PolicyKind,
};

/// Default master seed used when a config or preset does not pin one.
pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub line: Option<usize>,
    pub message: String,
}

impl ConfigError {
    fn at(line: usize, message: impl Into<String>) -> Self {
        ConfigError {
            line: Some(line),
            message: message.into(),
        }
    }

    fn general(message: impl Into<String>) -> Self {
        ConfigError {
            line: None,
            message: message.into(),
        }
    }
}

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.line {
            Some(n) => write!(f, "line {n}: {}", self.message),
            None => write!(f, "{}", self.message),
        }
    }
}

impl std::error::Error for ConfigError {}

/// A named experiment loaded from a config file.
#[derive(Debug, Clone, PartialEq)]
pub struct NamedConfig {
    pub name: String,
    pub config: ExperimentConfig,
}

const KNOWN_KEYS: [&str; 17] = [
    "name",
    "k",
    "means",
    "sigma",
    "distribution",
    "agent",
    "delta",
    "agent_delta",
    "attacker_delta",
    "budget_bound",
    "attacker",
    "target",
    "cost_cap",
    "horizon",
    "trials",
    "seed",
    "checkpoints",
];

struct Raw<'a> {
    values: HashMap<&'a str, (usize, &'a str)>,
}

impl<'a> Raw<'a> {
    fn get(&self, key: &str) -> Option<(usize, &'a str)> {
        self.values.get(key).copied()
    }

    fn parse<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, ConfigError> {
        match self.get(key) {
            None => Ok(None),
            Some((line, v)) => v
                .parse::<T>()
                .map(Some)
                .map_err(|_| ConfigError::at(line, format!("invalid value '{v}' for key '{key}'"))),
        }
    }
}

fn tokenize(text: &str) -> Result<Raw<'_>, ConfigError> {
    let mut values = HashMap::new();
    for (i, raw_line) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = match raw_line.split_once('#') {
            Some((before, _)) => before.trim(),
            None => raw_line.trim(),
        };
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            ConfigError::at(lineno, format!("expected 'key = value', got '{line}'"))
        })?;
        let key = key.trim();
        let value = value.trim();
        let canonical = KNOWN_KEYS
            .iter()
            .find(|&&k| k == key)
            .copied()
            .ok_or_else(|| ConfigError::at(lineno, format!("unknown key '{key}'")))?;
        if values.insert(canonical, (lineno, value)).is_some() {
            return Err(ConfigError::at(lineno, format!("duplicate key '{key}'")));
        }
    }
    Ok(Raw { values })
}

fn parse_list<T: std::str::FromStr>(
    line: usize,
    value: &str,
    key: &str,
) -> Result<Vec<T>, ConfigError> {
    value
        .split(',')
        .map(|item| {
            item.trim().parse::<T>().map_err(|_| {
                ConfigError::at(line, format!("invalid entry '{}' in '{key}'", item.trim()))
            })
        })
        .collect()
}

/// Parses a config file's contents.
pub fn parse_config_str(text: &str) -> Result<NamedConfig, ConfigError> {
    let raw = tokenize(text)?;

    let (means_line, means_value) = raw
        .get("means")
        .ok_or_else(|| ConfigError::general("missing required key 'means'"))?;
    let means: Vec<f64> = parse_list(means_line, means_value, "means")?;

    let sigma: f64 = raw
        .parse("sigma")?
        .ok_or_else(|| ConfigError::general("missing required key 'sigma'"))?;

    if let Some(k) = raw.parse::<usize>("k")? {
        if k != means.len() {
            let (line, _) = raw.get("k").unwrap();
            return Err(ConfigError::at(
                line,
                format!(
                    "k = {k} does not match the {} entries in 'means'",
                    means.len()
                ),
            ));
        }
    }

    if let Some((line, v)) = raw.get("distribution") {
        if v != "gaussian" {
            return Err(ConfigError::at(
                line,
                format!("unsupported distribution '{v}' (only 'gaussian')"),
            ));
        }
    }
    let instance = BanditInstance::new(means, sigma, DistributionKind::Gaussian)
        .map_err(|e| ConfigError::general(e.to_string()))?;

    let agent_kind = match raw.get("agent") {
        None => PolicyKind::Ucb,
        Some((_, "ucb")) => PolicyKind::Ucb,
        Some((_, "moucb")) => PolicyKind::Moucb,
        Some((line, v)) => {
            return Err(ConfigError::at(
                line,
                format!("unknown agent '{v}' (ucb | moucb)"),
            ))
        }
    };
    let attacker_kind = match raw.get("attacker") {
        None => AttackerKind::Null,
        Some((_, "null")) => AttackerKind::Null,
        Some((_, "oracle")) => AttackerKind::Oracle,
        Some((_, "lcb")) => AttackerKind::Lcb,
        Some((line, v)) => {
            return Err(ConfigError::at(
                line,
                format!("unknown attacker '{v}' (null | oracle | lcb)"),
            ))
        }
    };

    let delta: f64 = raw.parse("delta")?.unwrap_or(0.05);
    let target_index: usize = raw
        .parse::<usize>("target")?
        .unwrap_or(instance.arm_count());
    let target_arm = Arm::new(target_index).ok_or_else(|| {
        let line = raw.get("target").map(|(l, _)| l).unwrap_or(0);
        ConfigError::at(line, "target must be a 1-based arm index")
    })?;

    let mut config = ExperimentConfig::new(instance, agent_kind, attacker_kind, target_arm);
    config.agent_delta = raw.parse("agent_delta")?.unwrap_or(delta);
    config.attacker_delta = raw.parse("attacker_delta")?.unwrap_or(delta);
    config.budget_bound = raw.parse("budget_bound")?.unwrap_or(0);
    config.cost_cap = raw.parse("cost_cap")?;
    config.horizon = raw.parse("horizon")?.unwrap_or(100_000);
    config.trials = raw.parse("trials")?.unwrap_or(20);
    config.master_seed = raw.parse("seed")?.unwrap_or(DEFAULT_SEED);
    if let Some((line, v)) = raw.get("checkpoints") {
        config.checkpoints = parse_list(line, v, "checkpoints")?;
    }

    let name = match raw.get("name") {
        None => "experiment".to_string(),
        Some((line, v)) => {
            if v.is_empty()
                || !v
                    .chars()
                    .all(|c| c.is_ascii_alphanumeric() || matches!(c, '-' | '_' | '.'))
            {
                return Err(ConfigError::at(
                    line,
                    format!("name '{v}' must be non-empty and filesystem-safe"),
                ));
            }
            v.to_string()
        }
    };

    config
        .validate()
        .map_err(|e| ConfigError::general(e.to_string()))?;
    Ok(NamedConfig { name, config })
}

/// Loads and parses a config file.
pub fn load_config(path: &Path) -> Result<NamedConfig, ConfigError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ConfigError::general(format!("cannot read {}: {e}", path.display())))?;
    parse_config_str(&text).map_err(|mut e| {
        e.message = format!("{}: {}", path.display(), e.message);
        e
    })
}
