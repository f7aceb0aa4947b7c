//! Run configuration: a TOML tree with one table per concern.

use std::path::PathBuf;

use relhartree_core::diagnostics::{DEFAULT_SOBOLEV_ORDER, DEFAULT_WEIGHT};
use relhartree_core::dynamics::EvolutionParams;
use relhartree_core::scattering::DEFAULT_ALPHA;
use relhartree_core::{GridKind, GridSpec};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("config parse error: {0}")]
    Parse(String),
    #[error("invalid `{key}`: {message}")]
    Invalid { key: String, message: String },
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
}

fn invalid(key: &str, message: impl Into<String>) -> ConfigError {
    ConfigError::Invalid {
        key: key.to_string(),
        message: message.into(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GridKindName {
    Radial,
    Periodic,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    #[serde(default = "default_kind")]
    pub kind: GridKindName,
    #[serde(default = "default_n")]
    pub n: usize,
    #[serde(default = "default_extent")]
    pub extent: f64,
    /// Defaults to on for periodic grids and off for radial ones.
    #[serde(default)]
    pub dealias: Option<bool>,
}

fn default_kind() -> GridKindName {
    GridKindName::Radial
}
fn default_n() -> usize {
    1024
}
fn default_extent() -> f64 {
    200.0
}

impl Default for GridConfig {
    fn default() -> Self {
        Self {
            kind: default_kind(),
            n: default_n(),
            extent: default_extent(),
            dealias: None,
        }
    }
}

impl GridConfig {
    pub fn spec(&self) -> GridSpec {
        let base = match self.kind {
            GridKindName::Radial => GridSpec::radial(self.n, self.extent),
            GridKindName::Periodic => GridSpec::periodic(self.n, self.extent),
        };
        match self.dealias {
            Some(d) => base.with_dealias(d),
            None => base,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvolutionConfig {
    #[serde(default = "default_gamma")]
    pub gamma: f64,
    #[serde(default = "default_lambda")]
    pub lambda: f64,
    #[serde(default = "default_dt")]
    pub dt: f64,
    #[serde(default = "default_t_end")]
    pub t_end: f64,
    #[serde(default = "default_sample_every")]
    pub sample_every: usize,
    /// Largest tolerated relative mass drift before the run is rejected.
    #[serde(default = "default_mass_tolerance")]
    pub mass_tolerance: f64,
}

fn default_gamma() -> f64 {
    1.0
}
fn default_lambda() -> f64 {
    -1.0
}
fn default_dt() -> f64 {
    0.01
}
fn default_t_end() -> f64 {
    10.0
}
fn default_sample_every() -> usize {
    10
}
fn default_mass_tolerance() -> f64 {
    1e-6
}

impl Default for EvolutionConfig {
    fn default() -> Self {
        Self {
            gamma: default_gamma(),
            lambda: default_lambda(),
            dt: default_dt(),
            t_end: default_t_end(),
            sample_every: default_sample_every(),
            mass_tolerance: default_mass_tolerance(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InitialKind {
    Gaussian,
    File,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialConfig {
    #[serde(default = "default_initial_kind")]
    pub kind: InitialKind,
    #[serde(default = "default_amplitude")]
    pub amplitude: f64,
    #[serde(default = "default_width")]
    pub width: f64,
    /// BSFS snapshot when `kind = "file"`.
    #[serde(default)]
    pub path: Option<PathBuf>,
    /// Size of a seeded smooth random perturbation of the datum.
    #[serde(default)]
    pub noise: f64,
}

fn default_initial_kind() -> InitialKind {
    InitialKind::Gaussian
}
fn default_amplitude() -> f64 {
    0.1
}
fn default_width() -> f64 {
    1.0
}

impl Default for InitialConfig {
    fn default() -> Self {
        Self {
            kind: default_initial_kind(),
            amplitude: default_amplitude(),
            width: default_width(),
            path: None,
            noise: 0.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScatteringConfig {
    #[serde(default)]
    pub enabled: bool,
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    #[serde(default = "default_weight")]
    pub weight_w: f64,
    #[serde(default = "default_snapshot_times")]
    pub snapshot_times: Vec<f64>,
    /// `|xi*|` of the mode whose uncorrected phase drift is fitted.
    #[serde(default = "default_probe")]
    pub probe_xi: f64,
}

fn default_alpha() -> f64 {
    DEFAULT_ALPHA
}
fn default_weight() -> f64 {
    DEFAULT_WEIGHT
}
fn default_snapshot_times() -> Vec<f64> {
    vec![10.0, 20.0, 40.0, 80.0, 160.0]
}
fn default_probe() -> f64 {
    0.3
}

impl Default for ScatteringConfig {
    fn default() -> Self {
        Self {
            enabled: false,
            alpha: default_alpha(),
            weight_w: default_weight(),
            snapshot_times: default_snapshot_times(),
            probe_xi: default_probe(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagnosticsSection {
    #[serde(default = "default_sobolev")]
    pub sobolev_order: f64,
}

fn default_sobolev() -> f64 {
    DEFAULT_SOBOLEV_ORDER
}

impl Default for DiagnosticsSection {
    fn default() -> Self {
        Self {
            sobolev_order: default_sobolev(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinDecayConfig {
    #[serde(default = "default_decay_times")]
    pub times: Vec<f64>,
    #[serde(default = "default_window")]
    pub window: [f64; 2],
    #[serde(default = "default_kernel_x")]
    pub kernel_x: Vec<f64>,
    #[serde(default = "default_kernel_levels")]
    pub kernel_levels: Vec<i32>,
    #[serde(default = "yes")]
    pub decay: bool,
    #[serde(default = "yes")]
    pub kernel: bool,
}

fn default_decay_times() -> Vec<f64> {
    (0..=24).map(|i| 5.0 * 16f64.powf(i as f64 / 24.0)).collect()
}
fn default_window() -> [f64; 2] {
    [5.0, 80.0]
}
fn default_kernel_x() -> Vec<f64> {
    vec![1.0, 4.0, 16.0]
}
fn default_kernel_levels() -> Vec<i32> {
    (2..=8).collect()
}
fn yes() -> bool {
    true
}

impl Default for LinDecayConfig {
    fn default() -> Self {
        Self {
            times: default_decay_times(),
            window: default_window(),
            kernel_x: default_kernel_x(),
            kernel_levels: default_kernel_levels(),
            decay: true,
            kernel: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default = "default_dir")]
    pub dir: PathBuf,
    #[serde(default = "yes")]
    pub csv: bool,
    #[serde(default)]
    pub snapshots: bool,
}

fn default_dir() -> PathBuf {
    PathBuf::from("out")
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self {
            dir: default_dir(),
            csv: true,
            snapshots: false,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub grid: GridConfig,
    #[serde(default)]
    pub evolution: EvolutionConfig,
    #[serde(default)]
    pub initial: InitialConfig,
    #[serde(default)]
    pub scattering: ScatteringConfig,
    #[serde(default)]
    pub diagnostics: DiagnosticsSection,
    #[serde(default)]
    pub lindecay: LinDecayConfig,
    #[serde(default)]
    pub outputs: OutputConfig,
}

/// Parse and validate.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let config: RunConfig = toml::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))?;
    config.validate()?;
    Ok(config)
}

fn positive(key: &str, v: f64) -> Result<(), ConfigError> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(invalid(key, format!("{v} must be positive and finite")))
    }
}

impl RunConfig {
    pub fn evolution_params(&self) -> EvolutionParams {
        EvolutionParams {
            gamma: self.evolution.gamma,
            lambda: self.evolution.lambda,
            dt: self.evolution.dt,
            t_end: self.evolution.t_end,
            dealias: self.grid.spec().dealias,
            sample_every: self.evolution.sample_every,
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let spec = self.grid.spec();
        let min = GridSpec::min_n(spec.kind);
        if spec.n < min || !spec.n.is_power_of_two() {
            return Err(invalid("grid.n", format!("{} must be a power of two >= {min}", spec.n)));
        }
        positive("grid.extent", spec.extent)?;
        if spec.kind == GridKind::Periodic3D && spec.n > 256 {
            return Err(invalid("grid.n", "periodic grids are limited to n <= 256"));
        }

        let e = &self.evolution;
        if !(e.gamma > 0.0 && e.gamma < 3.0) {
            return Err(invalid("evolution.gamma", format!("{} is outside the range (0, 3)", e.gamma)));
        }
        if !e.lambda.is_finite() {
            return Err(invalid("evolution.lambda", "must be finite"));
        }
        if !(e.dt > 0.0 && e.dt <= 0.1) {
            return Err(invalid("evolution.dt", format!("{} is outside (0, 0.1]", e.dt)));
        }
        if !(e.t_end == 0.0 || (e.t_end.is_finite() && e.t_end >= e.dt)) {
            return Err(invalid("evolution.t_end", format!("{} must be 0 or at least dt", e.t_end)));
        }
        if e.sample_every == 0 {
            return Err(invalid("evolution.sample_every", "must be at least 1"));
        }
        positive("evolution.mass_tolerance", e.mass_tolerance)?;

        let i = &self.initial;
        match i.kind {
            InitialKind::Gaussian => {
                if !(i.amplitude.is_finite() && i.amplitude >= 0.0) {
                    return Err(invalid("initial.amplitude", "must be finite and nonnegative"));
                }
                positive("initial.width", i.width)?;
            }
            InitialKind::File => {
                if i.path.as_ref().is_none_or(|p| p.as_os_str().is_empty()) {
                    return Err(invalid("initial.path", "required when kind = \"file\""));
                }
            }
        }
        if !(i.noise.is_finite() && i.noise >= 0.0) {
            return Err(invalid("initial.noise", "must be finite and nonnegative"));
        }

        let s = &self.scattering;
        positive("scattering.alpha", s.alpha)?;
        if !(s.weight_w.is_finite() && s.weight_w >= 0.0) {
            return Err(invalid("scattering.weight_w", "must be finite and nonnegative"));
        }
        if s.snapshot_times.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(invalid("scattering.snapshot_times", "must be strictly increasing"));
        }
        let sample_dt = e.dt * e.sample_every as f64;
        if s.enabled {
            if s.snapshot_times.iter().any(|&t| !(t > 0.0) || t > e.t_end) {
                return Err(invalid("scattering.snapshot_times", "must lie in (0, t_end]"));
            }
            if s.snapshot_times.len() < 3 {
                return Err(invalid("scattering.snapshot_times", "need at least 3 snapshots"));
            }
            for &t in &s.snapshot_times {
                let k = t / sample_dt;
                if (k - k.round()).abs() > 1e-6 {
                    return Err(invalid(
                        "scattering.snapshot_times",
                        format!("{t} is not a multiple of dt * sample_every = {sample_dt}"),
                    ));
                }
            }
        }
        positive("scattering.probe_xi", s.probe_xi)?;

        if !(self.diagnostics.sobolev_order.is_finite() && self.diagnostics.sobolev_order >= 0.0) {
            return Err(invalid("diagnostics.sobolev_order", "must be finite and nonnegative"));
        }

        let l = &self.lindecay;
        if l.times.iter().any(|t| !(t.is_finite() && *t >= 0.0)) {
            return Err(invalid("lindecay.times", "must be finite and nonnegative"));
        }
        if !(l.window[0] > 0.0 && l.window[1] > l.window[0]) {
            return Err(invalid("lindecay.window", "need 0 < lo < hi"));
        }
        if l.kernel_x.iter().any(|x| !(x.is_finite() && *x > 0.0)) {
            return Err(invalid("lindecay.kernel_x", "radii must be positive"));
        }
        if l.kernel_levels.iter().any(|&v| !(-10..=20).contains(&v)) {
            return Err(invalid("lindecay.kernel_levels", "levels must lie in [-10, 20]"));
        }

        if self.outputs.dir.as_os_str().is_empty() {
            return Err(invalid("outputs.dir", "output directory path is empty"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_config_gets_defaults() {
        let c = parse_config("[grid]\nn = 256\n").unwrap();
        assert_eq!(c.evolution.gamma, 1.0);
        assert_eq!(c.evolution.lambda, -1.0);
        assert_eq!(c.scattering.alpha, 1.0 / 300.0);
        assert_eq!(c.scattering.weight_w, 10.0);
        assert_eq!(c.grid.n, 256);
        assert!(parse_config("").is_ok());
    }

    #[test]
    fn gamma_out_of_range_is_named() {
        let err = parse_config("[evolution]\ngamma = 5.0\n").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("evolution.gamma") && msg.contains("(0, 3)"), "{msg}");
    }

    #[test]
    fn duplicate_and_unknown_keys_are_parse_errors() {
        let dup = "[grid]\nn = 256\nn = 512\n";
        assert!(matches!(parse_config(dup), Err(ConfigError::Parse(_))));
        let unknown = "[grid]\nresolution = 3\n";
        let err = parse_config(unknown).unwrap_err();
        assert!(matches!(err, ConfigError::Parse(_)));
        assert!(err.to_string().contains("resolution"));
    }

    #[test]
    fn validation_rejects_bad_fields() {
        for (text, key) in [
            ("[outputs]\ndir = \"\"\n", "outputs.dir"),
            ("[evolution]\ndt = 0.5\n", "evolution.dt"),
            ("[grid]\nn = 100\n", "grid.n"),
            ("[initial]\nkind = \"file\"\n", "initial.path"),
            ("[scattering]\nenabled = true\nsnapshot_times = [1.0, 2.0]\n", "scattering.snapshot_times"),
        ] {
            let err = parse_config(text).unwrap_err().to_string();
            assert!(err.contains(key), "{text}: {err}");
        }
    }

    #[test]
    fn serialization_round_trips() {
        let c = parse_config("seed = 7\n[evolution]\nt_end = 3.0\n").unwrap();
        let text = toml::to_string(&c).unwrap();
        assert_eq!(parse_config(&text).unwrap(), c);
    }
}
