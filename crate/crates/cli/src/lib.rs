//! Configuration, presets and experiment runners behind the `relhartree` binary.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod manifest;
pub mod presets;
pub mod runner;

pub use config::{parse_config, ConfigError, RunConfig};
pub use runner::{
    exit_code, run_lindecay, run_oracle_suite, run_scattering, run_simulate, InvariantFailure,
    RunReport,
};
