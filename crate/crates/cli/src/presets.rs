//! Configurations shipped with the binary, one per reference experiment.

use crate::config::{parse_config, ConfigError, RunConfig};

/// `(name, subcommand it is meant for, TOML text)`.
pub const PRESETS: &[(&str, &str, &str)] = &[
    ("conservation", "simulate", include_str!("../presets/conservation.toml")),
    ("decay", "lindecay", include_str!("../presets/decay.toml")),
    (
        "modified-scattering-g1",
        "scattering",
        include_str!("../presets/modified-scattering-g1.toml"),
    ),
    (
        "linear-scattering-g2",
        "scattering",
        include_str!("../presets/linear-scattering-g2.toml"),
    ),
    (
        "kernel-asymptotics",
        "lindecay",
        include_str!("../presets/kernel-asymptotics.toml"),
    ),
];

pub fn preset_text(name: &str) -> Result<&'static str, ConfigError> {
    PRESETS
        .iter()
        .find(|p| p.0 == name)
        .map(|p| p.2)
        .ok_or_else(|| ConfigError::UnknownPreset(name.to_string()))
}

pub fn preset(name: &str) -> Result<RunConfig, ConfigError> {
    parse_config(preset_text(name)?)
}
