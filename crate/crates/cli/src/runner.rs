//! The four experiments behind the subcommands. Each claims its output
//! directory, computes, writes CSV/BSFS files plus a manifest, and returns
//! the numbers it wrote so callers can check them without re-reading files.

use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use relhartree_core::diagnostics::{
    compute_record, decay_rate_fit, format_float, write_records_csv, DiagnosticsConfig,
    DiagnosticsRecord, FitResult, DEFAULT_P0,
};
use relhartree_core::dynamics::{
    evolve_streaming, hartree_nonlinearity, profile_rhs, EvolutionParams, HartreeSystem,
    TrajectorySample,
};
use relhartree_core::lindecay::{decay_bound_check, kernel_table, DecayRow, KernelRow};
use relhartree_core::oracle::{
    direct_convolution, direct_duhamel, spherical_average, spherical_average_exact,
};
use relhartree_core::scattering::{
    linear_scattering_monitor, modified_profile, naive_profile_drift, predicted_drift,
    scattering_monitor, DriftFit, PairTable, SampleSchedule, ScatteringState,
};
use relhartree_core::spectral::{
    inverse_transform, read_snapshot, write_real_snapshot, write_snapshot,
};
use relhartree_core::{Grid, GridSpec, Space, SpectralField};

use crate::config::{ConfigError, InitialKind, RunConfig};
use crate::manifest::{Manifest, OutputDir};

/// A numerical invariant the run checked and found broken.
#[derive(Debug, thiserror::Error)]
#[error("invariant `{name}` violated: {detail}")]
pub struct InvariantFailure {
    pub name: &'static str,
    pub detail: String,
}

fn violated(name: &'static str, detail: impl Into<String>) -> anyhow::Error {
    InvariantFailure {
        name,
        detail: detail.into(),
    }
    .into()
}

/// Process exit status for a failed run: 2 configuration, 3 invariant,
/// 4 divergence, 1 anything else (I/O, locks).
pub fn exit_code(err: &anyhow::Error) -> i32 {
    use relhartree_core::Error as E;
    for cause in err.chain() {
        if cause.is::<ConfigError>() {
            return 2;
        }
        if cause.is::<InvariantFailure>() {
            return 3;
        }
        if let Some(e) = cause.downcast_ref::<E>() {
            return match e {
                E::Diverged { .. } => 4,
                E::InvalidGrid(_)
                | E::InvalidParameter { .. }
                | E::DomainTooSmall { .. }
                | E::UnsupportedGrid { .. }
                | E::GridTooLarge { .. } => 2,
                E::Io(_) | E::Format(_) => 1,
                _ => 3,
            };
        }
    }
    1
}

/// Files and headline numbers common to every run.
#[derive(Debug, Clone)]
pub struct RunReport {
    pub out_dir: PathBuf,
    pub manifest: Manifest,
    pub summary: Vec<(String, f64)>,
}

struct Session {
    out: OutputDir,
    started: Instant,
    command: &'static str,
    config_text: String,
    seed: u64,
    csv: bool,
    summary: Vec<(String, f64)>,
}

impl Session {
    fn open(command: &'static str, config: &RunConfig) -> anyhow::Result<Self> {
        config.validate()?;
        // the hash identifies the experiment, not where its files went
        let mut hashed = config.clone();
        hashed.outputs.dir = PathBuf::new();
        let config_text = toml::to_string(&hashed)?;
        let out = OutputDir::claim(&config.outputs.dir)?;
        Ok(Self {
            out,
            started: Instant::now(),
            command,
            config_text,
            seed: config.seed,
            csv: config.outputs.csv,
            summary: Vec::new(),
        })
    }

    fn csv(&mut self, name: &str, header: &str, rows: &[Vec<f64>]) -> anyhow::Result<()> {
        if !self.csv {
            return Ok(());
        }
        let mut w = BufWriter::new(self.out.create(name)?);
        writeln!(w, "{header}")?;
        for row in rows {
            let cells: Vec<String> = row.iter().map(|v| format_float(*v)).collect();
            writeln!(w, "{}", cells.join(","))?;
        }
        w.flush()?;
        Ok(())
    }

    fn records(&mut self, name: &str, records: &[DiagnosticsRecord]) -> anyhow::Result<()> {
        if !self.csv {
            return Ok(());
        }
        let mut w = BufWriter::new(self.out.create(name)?);
        write_records_csv(&mut w, records)?;
        w.flush()?;
        Ok(())
    }

    fn snapshot(&mut self, name: &str, field: &SpectralField) -> anyhow::Result<()> {
        let mut w = BufWriter::new(self.out.create(name)?);
        write_snapshot(&mut w, field)?;
        w.flush()?;
        Ok(())
    }

    fn real_snapshot(&mut self, name: &str, grid: &Arc<Grid>, values: &[f64]) -> anyhow::Result<()> {
        let mut w = BufWriter::new(self.out.create(name)?);
        write_real_snapshot(&mut w, grid, values)?;
        w.flush()?;
        Ok(())
    }

    fn note(&mut self, key: &str, value: f64) {
        self.summary.push((key.to_string(), value));
    }

    fn finish(mut self) -> anyhow::Result<RunReport> {
        if self.csv {
            let mut w = BufWriter::new(self.out.create("summary.csv")?);
            writeln!(w, "quantity,value")?;
            for (k, v) in &self.summary {
                writeln!(w, "{k},{}", format_float(*v))?;
            }
            w.flush()?;
        }
        let wall = self.started.elapsed().as_secs_f64();
        let manifest = Manifest::write(&self.out, self.command, self.seed, &self.config_text, wall)?;
        Ok(RunReport {
            out_dir: self.out.root().to_path_buf(),
            manifest,
            summary: self.summary,
        })
    }
}

/// The initial datum in physical space, including the seeded perturbation.
pub fn initial_datum(config: &RunConfig) -> anyhow::Result<SpectralField> {
    let spec = config.grid.spec();
    let u0 = match config.initial.kind {
        InitialKind::Gaussian => {
            let grid = Grid::new(spec)?;
            SpectralField::gaussian(grid, config.initial.amplitude, config.initial.width)
        }
        InitialKind::File => {
            let path = config.initial.path.as_ref().expect("validated");
            let file = std::fs::File::open(path).map_err(|e| ConfigError::Invalid {
                key: "initial.path".into(),
                message: format!("{}: {e}", path.display()),
            })?;
            let field = read_snapshot(std::io::BufReader::new(file))?;
            let got = field.grid().spec();
            if got.kind != spec.kind || got.n != spec.n || got.extent != spec.extent {
                return Err(ConfigError::Invalid {
                    key: "initial.path".into(),
                    message: format!("snapshot grid {got:?} does not match [grid]"),
                }
                .into());
            }
            // carry the configured dealias policy
            let grid = Grid::new(spec)?;
            let data = field.data().to_vec();
            let field = SpectralField::new(grid, data, field.space())?;
            match field.space() {
                Space::Physical => field,
                Space::Fourier => inverse_transform(&field)?,
            }
        }
    };
    if config.initial.noise == 0.0 {
        return Ok(u0);
    }
    // smooth, localized: u0 * (1 + eps * sum_k c_k (|x|/w)^{2k} / k!)
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let coeffs: Vec<Complex64> = (0..4)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    let eps = config.initial.noise;
    let width = config.initial.width;
    let grid = Arc::clone(u0.grid());
    let mut u = u0;
    for (i, v) in u.data_mut().iter_mut().enumerate() {
        let q = (grid.point_norm(i) / width).powi(2);
        let mut term = 1.0;
        let mut bump = Complex64::new(0.0, 0.0);
        for (k, c) in coeffs.iter().enumerate() {
            if k > 0 {
                term *= q / k as f64;
            }
            bump += c * term;
        }
        *v *= Complex64::new(1.0, 0.0) + bump * eps;
    }
    Ok(u)
}

fn diagnostics_config(config: &RunConfig) -> DiagnosticsConfig {
    DiagnosticsConfig {
        sobolev_order: config.diagnostics.sobolev_order,
        weight_w: config.scattering.weight_w,
        p0: DEFAULT_P0,
    }
}

/// `(max - min) / |first|` of a series.
pub fn relative_span(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut it = values.into_iter();
    let Some(first) = it.next() else { return 0.0 };
    let (mut lo, mut hi) = (first, first);
    for v in it {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if first == 0.0 {
        hi - lo
    } else {
        (hi - lo) / first.abs()
    }
}

fn is_snapshot_time(times: &[f64], t: f64) -> bool {
    times.iter().any(|&s| (s - t).abs() <= 1e-9 * s.max(1.0))
}

#[derive(Debug, Clone)]
pub struct SimulateOutcome {
    pub records: Vec<DiagnosticsRecord>,
    pub mass_drift: f64,
    pub energy_drift: f64,
    pub report: RunReport,
}

pub fn run_simulate(config: &RunConfig) -> anyhow::Result<SimulateOutcome> {
    let mut session = Session::open("simulate", config)?;
    let u0 = initial_datum(config)?;
    let params = config.evolution_params();
    let system = HartreeSystem::new(u0.grid(), params)?;
    let grid = Arc::clone(u0.grid());
    let diag = diagnostics_config(config);
    let scatter = config.scattering.enabled;
    let mut state = ScatteringState::new(&grid, config.scattering.alpha, params.lambda)?;
    let mut schedule = SampleSchedule::default();
    let mut records = Vec::new();
    let mut profiles: Vec<SpectralField> = Vec::new();
    {
        let mut observer = |s: &TrajectorySample| -> relhartree_core::Result<()> {
            records.push(compute_record(&system, s.t, &s.profile, &diag)?);
            if scatter && (schedule.accept(s.t) || is_snapshot_time(&config.scattering.snapshot_times, s.t)) {
                state.push(s.t, &s.profile)?;
            }
            if config.outputs.snapshots {
                profiles.push(s.profile.clone());
            }
            Ok(())
        };
        evolve_streaming(&u0, &params, &mut [&mut observer])?;
    }
    session.records("diagnostics.csv", &records)?;
    for (i, p) in profiles.iter().enumerate() {
        session.snapshot(&format!("profile_{i:05}.bsfs"), p)?;
    }
    if scatter {
        session.real_snapshot("phase_B.bsfs", &grid, &state.b)?;
    }
    let mass_drift = relative_span(records.iter().map(|r| r.mass));
    let energy_drift = relative_span(records.iter().map(|r| r.energy));
    session.note("mass_relative_drift", mass_drift);
    session.note("energy_relative_drift", energy_drift);
    session.note("samples", records.len() as f64);
    let report = session.finish()?;
    if mass_drift > config.evolution.mass_tolerance {
        return Err(violated(
            "mass conservation",
            format!("relative drift {mass_drift:e} exceeds {:e}", config.evolution.mass_tolerance),
        ));
    }
    Ok(SimulateOutcome {
        records,
        mass_drift,
        energy_drift,
        report,
    })
}

#[derive(Debug, Clone)]
pub struct ScatteringOutcome {
    /// Modified profile `g`, weighted sup differences.
    pub corrected: PairTable,
    /// The same monitor applied to the raw profile.
    pub naive: PairTable,
    /// Weighted `L^2` Cauchy differences of the raw profile.
    pub weighted_l2: PairTable,
    /// Log-drift fit at the probe mode; only computed for `gamma <= 1`.
    pub drift: Option<DriftFit>,
    pub predicted_drift: Option<f64>,
    pub probe_index: usize,
    pub b: Vec<f64>,
    pub report: RunReport,
}

pub fn run_scattering(config: &RunConfig) -> anyhow::Result<ScatteringOutcome> {
    let mut config = config.clone();
    config.scattering.enabled = true;
    let mut session = Session::open("scattering", &config)?;
    let u0 = initial_datum(&config)?;
    let params: EvolutionParams = config.evolution_params();
    let system = HartreeSystem::new(u0.grid(), params)?;
    let grid = Arc::clone(u0.grid());
    let diag = diagnostics_config(&config);
    let sc = &config.scattering;
    let probe_index = grid
        .mode_norms()
        .iter()
        .position(|&k| k >= sc.probe_xi)
        .ok_or_else(|| ConfigError::Invalid {
            key: "scattering.probe_xi".into(),
            message: format!("{} exceeds the largest grid mode", sc.probe_xi),
        })?;
    let drift_start = sc.snapshot_times[0];

    let mut state = ScatteringState::new(&grid, sc.alpha, params.lambda)?;
    let mut schedule = SampleSchedule::default();
    let mut g_snaps: Vec<(f64, SpectralField)> = Vec::new();
    let mut f_snaps: Vec<(f64, SpectralField)> = Vec::new();
    let mut drift: Vec<(f64, SpectralField)> = Vec::new();
    let mut records = Vec::new();
    let mut worst_modulus: f64 = 0.0;
    {
        let mut observer = |s: &TrajectorySample| -> relhartree_core::Result<()> {
            let snap = is_snapshot_time(&sc.snapshot_times, s.t);
            if schedule.accept(s.t) || snap {
                state.push(s.t, &s.profile)?;
                if s.t >= drift_start {
                    let mut one = SpectralField::zeros(Arc::clone(&grid), Space::Fourier);
                    one.data_mut()[probe_index] = s.profile.data()[probe_index];
                    drift.push((s.t, one));
                }
            }
            if snap {
                let g = modified_profile(&s.profile, &state)?;
                for (a, b) in g.data().iter().zip(s.profile.data()) {
                    worst_modulus = worst_modulus.max((a.norm() - b.norm()).abs());
                }
                records.push(compute_record(&system, s.t, &s.profile, &diag)?);
                g_snaps.push((s.t, g));
                f_snaps.push((s.t, s.profile.clone()));
            }
            Ok(())
        };
        evolve_streaming(&u0, &params, &mut [&mut observer])?;
    }
    if g_snaps.len() != sc.snapshot_times.len() {
        return Err(violated(
            "snapshot coverage",
            format!("{} of {} snapshot times were sampled", g_snaps.len(), sc.snapshot_times.len()),
        ));
    }
    let corrected = scattering_monitor(&g_snaps, sc.weight_w)?;
    let naive = scattering_monitor(&f_snaps, sc.weight_w)?;
    let weighted_l2 = linear_scattering_monitor(&f_snaps)?;
    let (drift_fit, predicted) = if params.gamma <= 1.0 {
        let fit = naive_profile_drift(&drift, probe_index)?;
        let late = &f_snaps.last().expect("nonempty").1;
        (Some(fit), Some(predicted_drift(late, probe_index, params.lambda)?))
    } else {
        (None, None)
    };

    let pair_rows = |t: &PairTable| -> Vec<Vec<f64>> { t.rows.iter().map(|r| vec![r.0, r.1, r.2]).collect() };
    session.records("diagnostics.csv", &records)?;
    session.csv("supdiff.csv", "t1,t2,supdiff", &pair_rows(&corrected))?;
    session.csv("supdiff_naive.csv", "t1,t2,supdiff", &pair_rows(&naive))?;
    session.csv("weighted_l2.csv", "t1,t2,weighted_l2_diff", &pair_rows(&weighted_l2))?;
    let drift_rows: Vec<Vec<f64>> = drift
        .iter()
        .map(|(t, f)| {
            let v = f.data()[probe_index];
            vec![*t, v.re, v.im]
        })
        .collect();
    session.csv("probe.csv", "t,re,im", &drift_rows)?;
    session.real_snapshot("phase_B.bsfs", &grid, &state.b)?;
    if config.outputs.snapshots {
        for (t, g) in &g_snaps {
            session.snapshot(&format!("g_t{t:08.3}.bsfs"), g)?;
        }
    }
    if let Some(p1) = corrected.p1() {
        session.note("p1_corrected", p1);
    }
    if let Some(p1) = naive.p1() {
        session.note("p1_naive", p1);
    }
    if let Some(fit) = weighted_l2.fit {
        session.note("weighted_l2_exponent", fit.exponent);
    }
    if let (Some(fit), Some(pred)) = (drift_fit, predicted) {
        session.note("drift_slope", fit.slope);
        session.note("drift_r_squared", fit.r_squared);
        session.note("drift_predicted", pred);
    }
    session.note("probe_xi", grid.mode_norms()[probe_index]);
    session.note("modulus_defect", worst_modulus);
    let report = session.finish()?;
    let scale = f_snaps.iter().map(|f| f.1.max_abs()).fold(0.0, f64::max);
    if worst_modulus > 1e-12 * scale.max(f64::MIN_POSITIVE) {
        return Err(violated("|g| = |f_hat|", format!("defect {worst_modulus:e}")));
    }
    Ok(ScatteringOutcome {
        corrected,
        naive,
        weighted_l2,
        drift: drift_fit,
        predicted_drift: predicted,
        probe_index,
        b: state.b,
        report,
    })
}

#[derive(Debug, Clone)]
pub struct LinDecayOutcome {
    pub decay: Vec<DecayRow>,
    pub fit: Option<FitResult>,
    /// max C / min C over the fit window.
    pub constant_ratio: Option<f64>,
    pub kernel: Vec<KernelRow>,
    pub report: RunReport,
}

pub fn run_lindecay(config: &RunConfig) -> anyhow::Result<LinDecayOutcome> {
    let mut session = Session::open("lindecay", config)?;
    let ld = &config.lindecay;
    let (mut decay, mut fit, mut constant_ratio) = (Vec::new(), None, None);
    if ld.decay {
        let u0 = initial_datum(config)?;
        decay = decay_bound_check(&u0, &ld.times)?;
        let rows: Vec<Vec<f64>> = decay.iter().map(|r| vec![r.t, r.sup, r.constant]).collect();
        session.csv("decay.csv", "t,sup,C", &rows)?;
        let series: Vec<(f64, f64)> = decay.iter().map(|r| (r.t, r.sup)).collect();
        let f = decay_rate_fit(&series, (ld.window[0], ld.window[1]))?;
        let inside: Vec<f64> = decay
            .iter()
            .filter(|r| r.t >= ld.window[0] && r.t <= ld.window[1])
            .map(|r| r.constant)
            .collect();
        let hi = inside.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let lo = inside.iter().cloned().fold(f64::INFINITY, f64::min);
        session.note("decay_exponent", f.exponent);
        session.note("decay_r_squared", f.r_squared);
        session.note("constant_ratio", hi / lo);
        fit = Some(f);
        constant_ratio = Some(hi / lo);
    }
    let mut kernel = Vec::new();
    if ld.kernel {
        kernel = kernel_table(&ld.kernel_x, &ld.kernel_levels)?;
        let rows: Vec<Vec<f64>> = kernel
            .iter()
            .map(|r| vec![r.x_norm, r.l as f64, r.value, r.error_bound_ratio])
            .collect();
        session.csv("kernel.csv", "x_norm,l,value,error_bound_ratio", &rows)?;
        let hi = kernel.iter().map(|r| r.error_bound_ratio).fold(f64::NEG_INFINITY, f64::max);
        let lo = kernel.iter().map(|r| r.error_bound_ratio).fold(f64::INFINITY, f64::min);
        session.note("kernel_ratio_max", hi);
        session.note("kernel_ratio_min", lo);
    }
    let report = session.finish()?;
    Ok(LinDecayOutcome {
        decay,
        fit,
        constant_ratio,
        kernel,
        report,
    })
}

/// One fast-path versus reference comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleCheck {
    pub name: &'static str,
    pub worst: f64,
    pub tolerance: f64,
}

impl OracleCheck {
    pub fn passed(&self) -> bool {
        self.worst <= self.tolerance
    }
}

#[derive(Debug, Clone)]
pub struct OracleOutcome {
    pub checks: Vec<OracleCheck>,
    pub report: RunReport,
}

fn random_field(grid: &Arc<Grid>, rng: &mut ChaCha8Rng, space: Space, real: bool) -> anyhow::Result<SpectralField> {
    let data = (0..grid.len())
        .map(|_| {
            let re = rng.random_range(-1.0..1.0);
            let im = if real { 0.0 } else { rng.random_range(-1.0..1.0) };
            Complex64::new(re, im)
        })
        .collect();
    Ok(SpectralField::new(Arc::clone(grid), data, space)?)
}

/// Convolution on 16^3, Duhamel sum on 8^3, spherical averages; all inputs
/// drawn from the configured seed.
pub fn oracle_checks(seed: u64) -> anyhow::Result<Vec<OracleCheck>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();

    let g16 = Grid::new(GridSpec::periodic(16, 9.0).with_dealias(false))?;
    for (name, gamma) in [
        ("convolution_16_gamma_1", 1.0),
        ("convolution_16_gamma_2", 2.0),
        ("convolution_16_gamma_0.6", 0.6),
    ] {
        let mut rho = random_field(&g16, &mut rng, Space::Physical, true)?;
        for v in rho.data_mut() {
            v.re = v.re.abs();
        }
        let slow = direct_convolution(&rho, gamma)?;
        let system = HartreeSystem::new(&g16, EvolutionParams { gamma, ..Default::default() })?;
        let density: Vec<f64> = rho.data().iter().map(|v| v.re).collect();
        let fast = system.potential(&density)?;
        let scale = slow.max_abs();
        let worst = slow
            .data()
            .iter()
            .zip(&fast)
            .map(|(a, b)| (a - b).norm() / scale)
            .fold(0.0, f64::max);
        checks.push(OracleCheck { name, worst, tolerance: 1e-10 });
    }

    let u = random_field(&g16, &mut rng, Space::Physical, false)?;
    let density: Vec<Complex64> = u.data().iter().map(|v| Complex64::new(v.norm_sqr(), 0.0)).collect();
    let pot = direct_convolution(&SpectralField::new(Arc::clone(&g16), density, Space::Physical)?, 1.0)?;
    let fast = hartree_nonlinearity(&u, 1.0, -1.0)?;
    let scale = fast.max_abs();
    let worst = u
        .data()
        .iter()
        .zip(pot.data())
        .zip(fast.data())
        .map(|((v, p), f)| (-v * p.re - f).norm() / scale)
        .fold(0.0, f64::max);
    checks.push(OracleCheck { name: "nonlinearity_16", worst, tolerance: 1e-10 });

    let g8 = Grid::new(GridSpec::periodic(8, 7.0).with_dealias(false))?;
    for (name, gamma, s) in [("duhamel_8_gamma_1", 1.0, 0.7), ("duhamel_8_gamma_2", 2.0, 2.3)] {
        let f = random_field(&g8, &mut rng, Space::Fourier, false)?;
        let params = EvolutionParams { gamma, lambda: -1.0, dealias: false, ..Default::default() };
        let fast = profile_rhs(&f, s, &params)?;
        let scale = fast.max_abs();
        let mut worst: f64 = 0.0;
        for xi in 0..g8.len() {
            let slow = direct_duhamel(&f, s, xi, gamma, -1.0)?;
            worst = worst.max((slow - fast.data()[xi]).norm() / scale);
        }
        checks.push(OracleCheck { name, worst, tolerance: 1e-10 });
    }

    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let a = [rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)];
        let b = rng.random_range(0.0..3.0);
        let exact = spherical_average_exact(a, b);
        worst = worst.max((spherical_average(a, b)? - exact).abs() / exact);
    }
    checks.push(OracleCheck { name: "spherical_average_100", worst, tolerance: 1e-8 });
    Ok(checks)
}

pub fn run_oracle_suite(config: &RunConfig) -> anyhow::Result<OracleOutcome> {
    let mut session = Session::open("oracle", config)?;
    let checks = oracle_checks(config.seed)?;
    if session.csv {
        let mut w = BufWriter::new(session.out.create("oracle.csv")?);
        writeln!(w, "check,worst_relative_error,tolerance,passed")?;
        for c in &checks {
            writeln!(
                w,
                "{},{},{},{}",
                c.name,
                format_float(c.worst),
                format_float(c.tolerance),
                u8::from(c.passed())
            )?;
        }
        w.flush()?;
    }
    let failed: Vec<String> = checks
        .iter()
        .filter(|c| !c.passed())
        .map(|c| format!("{} ({:e} > {:e})", c.name, c.worst, c.tolerance))
        .collect();
    session.note("checks", checks.len() as f64);
    session.note("failed", failed.len() as f64);
    let report = session.finish()?;
    if !failed.is_empty() {
        return Err(violated("oracle equivalence", failed.join(", ")));
    }
    Ok(OracleOutcome { checks, report })
}
