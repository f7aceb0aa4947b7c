//! Hartree nonlinearity and evolution of the profile `f = e^{it Lambda} u`.
//!
//! The unknown is `f_hat(t)`; it obeys
//! `d/dt f_hat = -i lambda e^{it Lambda} F[(K_gamma * |u|^2) u]` with
//! `u = e^{-it Lambda} F^-1 f_hat`, which is advanced with classical RK4.

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectral::{
    check_gamma, check_propagation_domain, forward_transform, inverse_transform,
    newton_radial_convolution, riesz_symbol, Grid, GridKind, Space, SpectralField,
};

/// Amplitude below which the initial datum counts as absent when measuring
/// its support radius.
pub const SUPPORT_THRESHOLD: f64 = 1e-12;

/// Abort once `||u(t)||_inf` exceeds this multiple of its initial value.
pub const BLOWUP_FACTOR: f64 = 10.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvolutionParams {
    pub gamma: f64,
    pub lambda: f64,
    pub dt: f64,
    pub t_end: f64,
    pub dealias: bool,
    pub sample_every: usize,
}

impl Default for EvolutionParams {
    fn default() -> Self {
        Self {
            gamma: 1.0,
            lambda: -1.0,
            dt: 0.01,
            t_end: 1.0,
            dealias: false,
            sample_every: 10,
        }
    }
}

impl EvolutionParams {
    pub fn validate(&self) -> Result<()> {
        check_gamma(self.gamma)?;
        if !self.lambda.is_finite() {
            return Err(Error::InvalidParameter {
                name: "lambda",
                value: self.lambda,
                constraint: "finite coupling",
            });
        }
        if !(self.dt > 0.0 && self.dt <= 0.1) {
            return Err(Error::InvalidParameter {
                name: "dt",
                value: self.dt,
                constraint: "0 < dt <= 0.1",
            });
        }
        // t_end = 0 is a degenerate run returning the initial sample only
        if !(self.t_end == 0.0 || (self.t_end.is_finite() && self.t_end >= self.dt)) {
            return Err(Error::InvalidParameter {
                name: "t_end",
                value: self.t_end,
                constraint: "t_end = 0 or t_end >= dt",
            });
        }
        if self.sample_every == 0 {
            return Err(Error::InvalidParameter {
                name: "sample_every",
                value: 0.0,
                constraint: "sample_every >= 1",
            });
        }
        Ok(())
    }

    /// Number of RK4 steps; the last one is shortened to land on `t_end`.
    pub fn step_count(&self) -> usize {
        if self.t_end == 0.0 {
            0
        } else {
            (self.t_end / self.dt - 1e-9).ceil() as usize
        }
    }

    pub fn step_time(&self, step: usize) -> f64 {
        (step as f64 * self.dt).min(self.t_end)
    }
}

enum Potential {
    /// Cumulative Newton sums (radial, gamma = 1).
    Newton,
    /// Per-mode Riesz symbol applied to the density's transform.
    Symbol(Vec<f64>),
}

/// Precomputed operator data for one `(grid, gamma, lambda, dealias)` choice.
pub struct HartreeSystem {
    grid: Arc<Grid>,
    params: EvolutionParams,
    lambda_values: Vec<f64>,
    potential: Potential,
    mask: Option<Vec<bool>>,
}

impl HartreeSystem {
    pub fn new(grid: &Arc<Grid>, params: EvolutionParams) -> Result<Self> {
        check_gamma(params.gamma)?;
        let lambda_values = grid.mode_norms().iter().map(|k| (1.0 + k * k).sqrt()).collect();
        let potential = if grid.kind() == GridKind::Radial3D && params.gamma == 1.0 {
            Potential::Newton
        } else {
            Potential::Symbol(riesz_symbol(grid, params.gamma)?.values().to_vec())
        };
        let mask = params.dealias.then(|| grid.dealias_mask());
        Ok(Self {
            grid: Arc::clone(grid),
            params,
            lambda_values,
            potential,
            mask,
        })
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn params(&self) -> &EvolutionParams {
        &self.params
    }

    pub fn dispersion(&self) -> &[f64] {
        &self.lambda_values
    }

    /// `K_gamma * rho` for a real density given on the physical points.
    pub fn potential(&self, density: &[f64]) -> Result<Vec<f64>> {
        match &self.potential {
            Potential::Newton => newton_radial_convolution(&self.grid, density),
            Potential::Symbol(symbol) => {
                let rho = SpectralField::new(
                    Arc::clone(&self.grid),
                    density.iter().map(|&d| Complex64::new(d, 0.0)).collect(),
                    Space::Physical,
                )?;
                let mut rho_hat = forward_transform(&rho)?;
                for (v, s) in rho_hat.data_mut().iter_mut().zip(symbol) {
                    *v *= s;
                }
                let v = inverse_transform(&rho_hat)?;
                Ok(v.data().iter().map(|c| c.re).collect())
            }
        }
    }

    /// `lambda (K_gamma * |u|^2) u` in physical space.
    pub fn nonlinearity(&self, u: &SpectralField) -> Result<SpectralField> {
        u.expect_space(Space::Physical)?;
        let density: Vec<f64> = u.data().iter().map(|v| v.norm_sqr()).collect();
        let pot = self.potential(&density)?;
        let lambda = self.params.lambda;
        let data = u
            .data()
            .iter()
            .zip(&pot)
            .map(|(v, p)| v * (lambda * p))
            .collect();
        Ok(u.with_data(data, Space::Physical))
    }

    fn apply_mask(&self, data: &mut [Complex64]) {
        if let Some(mask) = &self.mask {
            for (v, keep) in data.iter_mut().zip(mask) {
                if !keep {
                    *v = Complex64::new(0.0, 0.0);
                }
            }
        }
    }

    /// `u(s) = e^{-is Lambda} F^-1 f_hat` in physical space.
    pub fn physical_solution(&self, fhat: &SpectralField, s: f64) -> Result<SpectralField> {
        fhat.expect_space(Space::Fourier)?;
        let data: Vec<Complex64> = fhat
            .data()
            .iter()
            .zip(&self.lambda_values)
            .map(|(v, l)| v * Complex64::from_polar(1.0, -s * l))
            .collect();
        inverse_transform(&fhat.with_data(data, Space::Fourier))
    }

    /// Time derivative of the profile at time `s`.
    pub fn rhs(&self, fhat: &SpectralField, s: f64) -> Result<SpectralField> {
        fhat.expect_space(Space::Fourier)?;
        if !s.is_finite() {
            return Err(Error::InvalidParameter {
                name: "s",
                value: s,
                constraint: "finite time",
            });
        }
        if self.params.lambda == 0.0 {
            return Ok(SpectralField::zeros(Arc::clone(&self.grid), Space::Fourier));
        }
        let phases: Vec<Complex64> = self
            .lambda_values
            .iter()
            .map(|l| Complex64::from_polar(1.0, s * l))
            .collect();
        let mut uhat: Vec<Complex64> = fhat
            .data()
            .iter()
            .zip(&phases)
            .map(|(v, p)| v * p.conj())
            .collect();
        self.apply_mask(&mut uhat);
        let u = inverse_transform(&fhat.with_data(uhat, Space::Fourier))?;
        let nl = self.nonlinearity(&u)?;
        let mut out = forward_transform(&nl)?;
        self.apply_mask(out.data_mut());
        let minus_i = Complex64::new(0.0, -1.0);
        for (v, p) in out.data_mut().iter_mut().zip(&phases) {
            *v *= minus_i * p;
        }
        Ok(out)
    }

    /// One classical RK4 step of length `dt` from time `s`.
    pub fn step_rk4(&self, fhat: &SpectralField, s: f64, dt: f64) -> Result<SpectralField> {
        if !(dt > 0.0) {
            return Err(Error::InvalidParameter {
                name: "dt",
                value: dt,
                constraint: "dt > 0",
            });
        }
        let axpy = |base: &SpectralField, k: &SpectralField, c: f64| {
            let data = base
                .data()
                .iter()
                .zip(k.data())
                .map(|(b, k)| b + k * c)
                .collect();
            base.with_data(data, Space::Fourier)
        };
        let k1 = self.rhs(fhat, s)?;
        let k2 = self.rhs(&axpy(fhat, &k1, 0.5 * dt), s + 0.5 * dt)?;
        let k3 = self.rhs(&axpy(fhat, &k2, 0.5 * dt), s + 0.5 * dt)?;
        let k4 = self.rhs(&axpy(fhat, &k3, dt), s + dt)?;
        let c = dt / 6.0;
        let data: Vec<Complex64> = fhat
            .data()
            .iter()
            .enumerate()
            .map(|(i, f)| {
                f + (k1.data()[i] + 2.0 * k2.data()[i] + 2.0 * k3.data()[i] + k4.data()[i]) * c
            })
            .collect();
        let next = fhat.with_data(data, Space::Fourier);
        if !next.is_finite() {
            return Err(Error::Diverged {
                t: s + dt,
                reason: "non-finite value in state".into(),
            });
        }
        Ok(next)
    }
}

/// `lambda (|x|^-gamma * |u|^2) u`.
pub fn hartree_nonlinearity(u: &SpectralField, gamma: f64, lambda: f64) -> Result<SpectralField> {
    let params = EvolutionParams {
        gamma,
        lambda,
        ..EvolutionParams::default()
    };
    HartreeSystem::new(u.grid(), params)?.nonlinearity(u)
}

pub fn profile_rhs(fhat: &SpectralField, s: f64, params: &EvolutionParams) -> Result<SpectralField> {
    HartreeSystem::new(fhat.grid(), *params)?.rhs(fhat, s)
}

pub fn step_rk4(
    fhat: &SpectralField,
    s: f64,
    dt: f64,
    params: &EvolutionParams,
) -> Result<SpectralField> {
    HartreeSystem::new(fhat.grid(), *params)?.step_rk4(fhat, s, dt)
}

/// Profile snapshot with the cheap diagnostics computed inline.
#[derive(Clone, Debug)]
pub struct TrajectorySample {
    pub t: f64,
    /// `f_hat(t, .)` in Fourier space.
    pub profile: SpectralField,
    /// `||u(t)||_{L^2}`.
    pub mass: f64,
    /// `||u(t)||_{L^inf}` over the grid points.
    pub linf_u: f64,
}

/// Read-only consumer of trajectory samples, invoked in registration order.
pub trait Observer {
    fn observe(&mut self, sample: &TrajectorySample) -> Result<()>;
}

impl<F: FnMut(&TrajectorySample) -> Result<()>> Observer for F {
    fn observe(&mut self, sample: &TrajectorySample) -> Result<()> {
        self(sample)
    }
}

fn make_sample(system: &HartreeSystem, t: f64, profile: SpectralField) -> Result<TrajectorySample> {
    let u = system.physical_solution(&profile, t)?;
    Ok(TrajectorySample {
        t,
        mass: profile.norm_sq().sqrt(),
        linf_u: u.max_abs(),
        profile,
    })
}

/// Evolve from `u0` (either space) and collect every sample.
pub fn evolve(
    u0: &SpectralField,
    params: &EvolutionParams,
    observers: &mut [&mut dyn Observer],
) -> Result<Vec<TrajectorySample>> {
    let mut samples = Vec::new();
    let mut collect = |s: &TrajectorySample| -> Result<()> {
        samples.push(s.clone());
        Ok(())
    };
    {
        let mut all: Vec<&mut dyn Observer> = Vec::with_capacity(observers.len() + 1);
        for o in observers.iter_mut() {
            all.push(&mut **o);
        }
        all.push(&mut collect);
        evolve_streaming(u0, params, &mut all)?;
    }
    Ok(samples)
}

/// Evolve from `u0`, handing samples to the observers only; returns the
/// final sample.
pub fn evolve_streaming(
    u0: &SpectralField,
    params: &EvolutionParams,
    observers: &mut [&mut dyn Observer],
) -> Result<TrajectorySample> {
    params.validate()?;
    if !u0.is_finite() {
        return Err(Error::InvalidParameter {
            name: "u0",
            value: f64::NAN,
            constraint: "finite initial datum",
        });
    }
    let grid = Arc::clone(u0.grid());
    let initial_physical = match u0.space() {
        Space::Physical => u0.clone(),
        Space::Fourier => inverse_transform(u0)?,
    };
    let r_data = grid.support_radius(initial_physical.data(), SUPPORT_THRESHOLD);
    check_propagation_domain(&grid, r_data, params.t_end)?;

    let system = HartreeSystem::new(&grid, *params)?;
    let mut fhat = forward_transform(&initial_physical)?;
    let mut sample = make_sample(&system, 0.0, fhat.clone())?;
    let linf0 = sample.linf_u;
    for o in observers.iter_mut() {
        o.observe(&sample)?;
    }

    let steps = params.step_count();
    for step in 0..steps {
        let t = params.step_time(step);
        let t_next = params.step_time(step + 1);
        fhat = system.step_rk4(&fhat, t, t_next - t)?;
        let last = step + 1 == steps;
        if (step + 1) % params.sample_every == 0 || last {
            sample = make_sample(&system, t_next, fhat.clone())?;
            if sample.linf_u > BLOWUP_FACTOR * linf0 {
                return Err(Error::Diverged {
                    t: t_next,
                    reason: format!(
                        "sup norm {} exceeds {}x its initial value {}",
                        sample.linf_u, BLOWUP_FACTOR, linf0
                    ),
                });
            }
            for o in observers.iter_mut() {
                o.observe(&sample)?;
            }
        }
    }
    Ok(sample)
}
