//! Modified-scattering phase `B(t, xi)`, the corrected profile
//! `g = e^{i lambda B} f_hat`, and convergence monitors.
//!
//! The leading self-interaction of the profile equation is
//! `-i lambda D(s, xi) f_hat(s, xi)` with
//! `D = c0 int |xi/<xi> - sigma/<sigma>|^-1 |f_hat(s, sigma)|^2 dsigma * phi_s(xi) / (s+1)`,
//! so `f_hat ~ e^{-i lambda B} f_plus` with `B = int_0^t D ds`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::diagnostics::{fourier_weighted_sup, linear_fit, loglog_fit, FitResult};
use crate::dyadic::base_cutoff;
use crate::dynamics::TrajectorySample;
use crate::error::{Error, Result};
use crate::quadrature::GaussLegendre;
use crate::spectral::{inverse_transform, Grid, GridKind, GridSpec, Space, SpectralField};

/// Default exponent in `phi_s(xi) = phi(|xi| s^-alpha)`.
pub const DEFAULT_ALPHA: f64 = 1.0 / 300.0;

/// `c0 = (2 pi)^-3`.
pub fn c0() -> f64 {
    (2.0 * PI).powi(-3)
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "alpha",
            value: alpha,
            constraint: "alpha > 0",
        })
    }
}

/// `phi_s(xi) = phi(|xi| s^-alpha)`; at `s = 0` only `xi = 0` survives.
pub fn time_cutoff(xi_norm: f64, s: f64, alpha: f64) -> f64 {
    if s <= 0.0 {
        return if xi_norm == 0.0 { 1.0 } else { 0.0 };
    }
    base_cutoff(xi_norm * s.powf(-alpha))
}

/// `c0 int |xi/<xi> - sigma/<sigma>|^-1 |u_hat(sigma)|^2 dsigma` for every
/// mode `xi` of the grid (the time-independent part of the density).
pub fn correction_rates(uhat: &SpectralField) -> Result<Vec<f64>> {
    uhat.expect_space(Space::Fourier)?;
    match uhat.grid().kind() {
        GridKind::Radial3D => Ok(radial_rates(uhat)),
        GridKind::Periodic3D => {
            let grid = uhat.grid();
            (0..grid.len()).map(|k| periodic_rate(uhat, k)).collect()
        }
    }
}

/// The rate at a single mode.
pub fn correction_rate(uhat: &SpectralField, xi: usize) -> Result<f64> {
    uhat.expect_space(Space::Fourier)?;
    let grid = uhat.grid();
    if xi >= grid.len() {
        return Err(Error::InvalidParameter {
            name: "xi",
            value: xi as f64,
            constraint: "mode index inside the grid",
        });
    }
    match grid.kind() {
        GridKind::Radial3D => Ok(radial_rates(uhat)[xi]),
        GridKind::Periodic3D => periodic_rate(uhat, xi),
    }
}

/// Density `D(s, xi) = rate(xi) phi_s(xi) / (s + 1)`.
pub fn correction_density(uhat: &SpectralField, xi: usize, s: f64, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let k = uhat.grid().mode_norms().get(xi).copied().unwrap_or(0.0);
    let cut = time_cutoff(k, s, alpha);
    if cut == 0.0 {
        uhat.expect_space(Space::Fourier)?;
        return Ok(0.0);
    }
    Ok(correction_rate(uhat, xi)? * cut / (s + 1.0))
}

/// Density at every mode.
pub fn correction_densities(uhat: &SpectralField, s: f64, alpha: f64) -> Result<Vec<f64>> {
    check_alpha(alpha)?;
    let rates = correction_rates(uhat)?;
    Ok(rates
        .iter()
        .zip(uhat.grid().mode_norms())
        .map(|(r, &k)| r * time_cutoff(k, s, alpha) / (s + 1.0))
        .collect())
}

/// Radial route. With `a = |xi|/<xi>` and `b = |sigma|/<sigma>` the
/// angular integral is `4 pi / max(a, b)`, and `rho^2 |u_hat|^2 = 16 pi^2 |W|^2`
/// for the stored coefficient `W`. The kink of `1/max` sits on the node
/// `j = k`; one-sided Gregory corrections on both sides keep the rule
/// third order there.
fn radial_rates(uhat: &SpectralField) -> Vec<f64> {
    let grid = uhat.grid();
    let n = grid.len();
    let dk = grid.mode_spacing();
    let b: Vec<f64> = grid.mode_norms().iter().map(|k| k / (1.0 + k * k).sqrt()).collect();
    let w2: Vec<f64> = uhat.data().iter().map(|v| v.norm_sqr()).collect();
    // prefix[k] = sum_{j<=k} |W_j|^2, suffix[k] = sum_{j>k} |W_j|^2 / b_j
    let mut prefix = vec![0.0; n];
    let mut acc = 0.0;
    for j in 0..n {
        acc += w2[j];
        prefix[j] = acc;
    }
    let mut suffix = vec![0.0; n];
    let mut acc = 0.0;
    for j in (0..n).rev() {
        suffix[j] = acc;
        acc += w2[j] / b[j];
    }
    let scale = c0() * 4.0 * PI * 16.0 * PI * PI * dk;
    (0..n)
        .map(|k| {
            let a = b[k];
            let f = |j: usize| w2[j] / a.max(b[j]);
            let mut sum = prefix[k] / a + suffix[k];
            if k >= 3 && k + 2 < n {
                sum += -0.25 * f(k) + (f(k - 1) + f(k + 1)) / 6.0 - (f(k - 2) + f(k + 2)) / 24.0;
            }
            scale * sum
        })
        .collect()
}

/// `z`-map `sigma -> sigma / <sigma>`.
fn velocity(v: [f64; 3]) -> [f64; 3] {
    let g = (1.0 + v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    [v[0] / g, v[1] / g, v[2] / g]
}

/// Periodic route: lattice sum, with the singular cell `sigma = xi` replaced
/// by the cell average of `|J (sigma - xi)|^-1`, `J` the Jacobian of the
/// velocity map at `xi`.
fn periodic_rate(uhat: &SpectralField, k: usize) -> Result<f64> {
    let grid = uhat.grid();
    let xi = grid.mode_vector(k);
    let zx = velocity(xi);
    let cell = grid.mode_spacing().powi(3);
    let mut sum = 0.0;
    for (j, v) in uhat.data().iter().enumerate() {
        if j == k {
            continue;
        }
        let zs = velocity(grid.mode_vector(j));
        let d = ((zx[0] - zs[0]).powi(2) + (zx[1] - zs[1]).powi(2) + (zx[2] - zs[2]).powi(2)).sqrt();
        sum += v.norm_sqr() / d;
    }
    sum += uhat.data()[k].norm_sqr() * singular_cell_average(xi, grid.mode_spacing());
    Ok(c0() * cell * sum)
}

/// `delta^-3 int_{cube of side delta} |J u|^-1 du`, with
/// `J = (I - xi xi^T / <xi>^2) / <xi>`. The integrand is homogeneous of
/// degree -1, so the cube splits into six pyramids whose volume integrals
/// reduce to `1/4` of face integrals.
pub fn singular_cell_average(xi: [f64; 3], delta: f64) -> f64 {
    let g2 = 1.0 + xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
    let g = g2.sqrt();
    let jac = |u: [f64; 3]| {
        let dot = (xi[0] * u[0] + xi[1] * u[1] + xi[2] * u[2]) / g2;
        [
            (u[0] - dot * xi[0]) / g,
            (u[1] - dot * xi[1]) / g,
            (u[2] - dot * xi[2]) / g,
        ]
    };
    let rule = GaussLegendre::new(24);
    let nodes: Vec<(f64, f64)> = rule.mapped(-0.5, 0.5).collect();
    let mut total = 0.0;
    for axis in 0..3 {
        for side in [-0.5, 0.5] {
            for &(p, wp) in &nodes {
                for &(q, wq) in &nodes {
                    let mut u = [0.0; 3];
                    u[axis] = side;
                    u[(axis + 1) % 3] = p;
                    u[(axis + 2) % 3] = q;
                    let ju = jac(u);
                    total += wp * wq / (ju[0] * ju[0] + ju[1] * ju[1] + ju[2] * ju[2]).sqrt();
                }
            }
        }
    }
    0.25 * total / delta
}

/// Accumulated phase over the modes of one grid.
#[derive(Clone, Debug)]
pub struct ScatteringState {
    pub grid: GridSpec,
    /// `B(t_last, xi)` per stored mode, radians.
    pub b: Vec<f64>,
    pub t_last: f64,
    pub alpha: f64,
    pub c0: f64,
    /// Coupling `lambda` of the run; fixes the sign of the correction.
    pub coupling: f64,
    last_rates: Option<Vec<f64>>,
}

impl ScatteringState {
    pub fn new(grid: &Grid, alpha: f64, coupling: f64) -> Result<Self> {
        check_alpha(alpha)?;
        if !coupling.is_finite() {
            return Err(Error::InvalidParameter {
                name: "lambda",
                value: coupling,
                constraint: "finite coupling",
            });
        }
        Ok(Self {
            grid: *grid.spec(),
            b: vec![0.0; grid.len()],
            t_last: 0.0,
            alpha,
            c0: c0(),
            coupling,
            last_rates: None,
        })
    }

    /// Feed the profile at time `t`; the first call only records the rates.
    ///
    /// For `xi != 0` the cutoff `phi_s(xi)` leaves 1 only for
    /// `s < (|xi|/1.25)^{1/alpha}`, a set of negligible measure; an interval
    /// starting at `s = 0` therefore uses the cutoff of its right end, which
    /// keeps the trapezoid rule second order.
    pub fn push(&mut self, t: f64, fhat: &SpectralField) -> Result<()> {
        if fhat.grid().spec().kind != self.grid.kind
            || fhat.grid().n() != self.grid.n
            || fhat.grid().extent() != self.grid.extent
        {
            return Err(Error::GridMismatch);
        }
        if !t.is_finite() || t < 0.0 {
            return Err(Error::InvalidParameter {
                name: "t",
                value: t,
                constraint: "finite, nonnegative time",
            });
        }
        if self.last_rates.is_some() && t < self.t_last {
            return Err(Error::OutOfOrder {
                previous: self.t_last,
                t,
            });
        }
        let rates = correction_rates(fhat)?;
        if let Some(prev) = &self.last_rates {
            let s0 = self.t_last;
            let cut_time = if s0 > 0.0 { s0 } else { t };
            let half = 0.5 * (t - s0);
            let norms = fhat.grid().mode_norms();
            for (i, b) in self.b.iter_mut().enumerate() {
                let left = prev[i] * time_cutoff(norms[i], cut_time, self.alpha) / (s0 + 1.0);
                let right = rates[i] * time_cutoff(norms[i], t, self.alpha) / (t + 1.0);
                let next = *b + half * (left + right);
                if !(next.is_finite() && next >= *b) {
                    return Err(Error::InvariantViolation(format!(
                        "B decreased or became non-finite at mode {i}, t = {t}"
                    )));
                }
                *b = next;
            }
        }
        self.t_last = t;
        self.last_rates = Some(rates);
        Ok(())
    }
}

/// Trapezoid accumulation of `B` over ordered samples.
#[allow(non_snake_case)]
pub fn accumulate_B(state: &ScatteringState, samples: &[TrajectorySample]) -> Result<ScatteringState> {
    let mut next = state.clone();
    for s in samples {
        next.push(s.t, &s.profile)?;
    }
    Ok(next)
}

/// `g = e^{i lambda B} f_hat`.
pub fn modified_profile(fhat: &SpectralField, state: &ScatteringState) -> Result<SpectralField> {
    fhat.expect_space(Space::Fourier)?;
    let spec = fhat.grid().spec();
    if spec.kind != state.grid.kind || spec.n != state.grid.n || spec.extent != state.grid.extent {
        return Err(Error::GridMismatch);
    }
    let mut g = fhat.clone();
    for (v, b) in g.data_mut().iter_mut().zip(&state.b) {
        *v *= Complex64::from_polar(1.0, state.coupling * b);
    }
    Ok(g)
}

/// Sampling cadence for phase accumulation: every `early_dt` before
/// `switch_time`, then geometric with factor `ratio`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SampleSchedule {
    pub early_dt: f64,
    pub switch_time: f64,
    pub ratio: f64,
    next: f64,
}

impl Default for SampleSchedule {
    fn default() -> Self {
        Self::new(0.1, 2.0, 1.05)
    }
}

impl SampleSchedule {
    pub fn new(early_dt: f64, switch_time: f64, ratio: f64) -> Self {
        Self {
            early_dt,
            switch_time,
            ratio,
            next: 0.0,
        }
    }

    /// Whether the sample at `t` is due; advances the schedule if so.
    pub fn accept(&mut self, t: f64) -> bool {
        let tol = 1e-9 * (1.0 + t);
        if t + tol < self.next {
            return false;
        }
        while self.next <= t + tol {
            self.next = if self.next < self.switch_time {
                self.next + self.early_dt
            } else {
                self.next * self.ratio
            };
        }
        true
    }
}

/// A `(t1, t2, value)` table over dyadic pairs plus the decay fit.
#[derive(Clone, Debug, PartialEq)]
pub struct PairTable {
    pub rows: Vec<(f64, f64, f64)>,
    /// Fit of `value` against `t1`; absent if fewer than two positive rows.
    pub fit: Option<FitResult>,
}

impl PairTable {
    /// `p1 = -exponent`.
    pub fn p1(&self) -> Option<f64> {
        self.fit.map(|f| -f.exponent)
    }

    pub fn strictly_decreasing(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].2 < w[0].2)
    }
}

fn dyadic_pairs(times: &[f64]) -> Result<Vec<(usize, usize)>> {
    if times.len() < 3 {
        return Err(Error::InsufficientData(format!(
            "{} snapshots, need at least 3",
            times.len()
        )));
    }
    for w in times.windows(2) {
        if !(w[1] > w[0]) {
            return Err(Error::OutOfOrder {
                previous: w[0],
                t: w[1],
            });
        }
    }
    let mut pairs = Vec::new();
    for (i, &t1) in times.iter().enumerate() {
        if let Some(j) = times.iter().position(|&t2| (t2 - 2.0 * t1).abs() <= 1e-9 * t1.max(1.0)) {
            if t1 > 0.0 {
                pairs.push((i, j));
            }
        }
    }
    Ok(pairs)
}

fn pair_table(
    times: &[f64],
    value: impl Fn(usize, usize) -> Result<f64>,
) -> Result<PairTable> {
    let pairs = dyadic_pairs(times)?;
    let mut rows = Vec::with_capacity(pairs.len());
    for (i, j) in pairs {
        rows.push((times[i], times[j], value(i, j)?));
    }
    let positive: Vec<(f64, f64)> = rows.iter().filter(|r| r.2 > 0.0).map(|r| (r.0, r.2)).collect();
    let fit = if positive.len() == rows.len() && rows.len() >= 2 {
        Some(loglog_fit(&positive, 2)?)
    } else {
        None
    };
    Ok(PairTable { rows, fit })
}

/// `sup_xi (1+|xi|)^w |g(t2) - g(t1)|` over dyadic pairs `t2 = 2 t1`.
pub fn scattering_monitor(snapshots: &[(f64, SpectralField)], w: f64) -> Result<PairTable> {
    let times: Vec<f64> = snapshots.iter().map(|s| s.0).collect();
    pair_table(&times, |i, j| {
        let (a, b) = (&snapshots[i].1, &snapshots[j].1);
        a.expect_same_grid(b)?;
        let diff: Vec<Complex64> = b.data().iter().zip(a.data()).map(|(x, y)| x - y).collect();
        let diff = SpectralField::new(a.grid().clone(), diff, Space::Fourier)?;
        fourier_weighted_sup(&diff, w)
    })
}

/// `||<x>^2 (f(t2) - f(t1))||_{L^2}` over dyadic pairs.
pub fn linear_scattering_monitor(snapshots: &[(f64, SpectralField)]) -> Result<PairTable> {
    let times: Vec<f64> = snapshots.iter().map(|s| s.0).collect();
    let physical: Vec<SpectralField> = snapshots
        .iter()
        .map(|(_, f)| match f.space() {
            Space::Physical => Ok(f.clone()),
            Space::Fourier => inverse_transform(f),
        })
        .collect::<Result<_>>()?;
    pair_table(&times, |i, j| {
        let (a, b) = (&physical[i], &physical[j]);
        a.expect_same_grid(b)?;
        let grid = a.grid();
        Ok(a.data()
            .iter()
            .zip(b.data())
            .enumerate()
            .map(|(k, (x, y))| {
                let r2 = grid.point_norm(k).powi(2);
                grid.physical_weight(k) * (1.0 + r2).powi(2) * (y - x).norm_sqr()
            })
            .sum::<f64>()
            .sqrt())
    })
}

/// Fit of the unwrapped phase `arg f_hat(t, xi*)` against `ln(1 + t)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DriftFit {
    pub slope: f64,
    pub intercept: f64,
    pub residual: f64,
    pub r_squared: f64,
}

/// Largest phase step accepted by the unwrapper.
pub const MAX_PHASE_STEP: f64 = 0.75 * PI;

pub fn naive_profile_drift(snapshots: &[(f64, SpectralField)], xi: usize) -> Result<DriftFit> {
    if snapshots.len() < 3 {
        return Err(Error::InsufficientData(format!(
            "{} snapshots, need at least 3",
            snapshots.len()
        )));
    }
    let mut values = Vec::with_capacity(snapshots.len());
    for (t, f) in snapshots {
        f.expect_space(Space::Fourier)?;
        let v = *f.data().get(xi).ok_or(Error::InvalidParameter {
            name: "xi",
            value: xi as f64,
            constraint: "mode index inside the grid",
        })?;
        values.push((*t, v));
    }
    let peak = values.iter().map(|v| v.1.norm()).fold(0.0, f64::max);
    if values.iter().any(|v| !(v.1.norm() > 1e-3 * peak) || !(peak > 0.0)) {
        return Err(Error::Degenerate(format!(
            "profile vanishes at mode {xi} in some snapshot"
        )));
    }
    let mut pts = Vec::with_capacity(values.len());
    let mut phase = values[0].1.arg();
    pts.push(((1.0 + values[0].0).ln(), phase));
    for w in values.windows(2) {
        if !(w[1].0 > w[0].0) {
            return Err(Error::OutOfOrder {
                previous: w[0].0,
                t: w[1].0,
            });
        }
        let step = (w[1].1 * w[0].1.conj()).arg();
        if step.abs() > MAX_PHASE_STEP {
            return Err(Error::SamplingTooCoarse {
                t1: w[0].0,
                t2: w[1].0,
                increment: step,
            });
        }
        phase += step;
        pts.push(((1.0 + w[1].0).ln(), phase));
    }
    let line = linear_fit(&pts)?;
    Ok(DriftFit {
        slope: line.slope,
        intercept: line.intercept,
        residual: line.rms,
        r_squared: line.r_squared,
    })
}

/// Drift slope predicted from a late profile: `-lambda * rate(xi*)`.
pub fn predicted_drift(fhat: &SpectralField, xi: usize, lambda: f64) -> Result<f64> {
    Ok(-lambda * correction_rate(fhat, xi)?)
}
