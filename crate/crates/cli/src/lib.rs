//! Command-line front end for the bandit action-manipulation lab: experiment
//! presets, flat key=value config files, CSV emission and optional SVG plots.

pub mod app;
pub mod config;
pub mod plot;
pub mod presets;

pub use app::run_cli;
pub use config::{load_config, parse_config_str, ConfigError, NamedConfig, DEFAULT_SEED};
pub use presets::{expand_preset, Overrides, Preset};
