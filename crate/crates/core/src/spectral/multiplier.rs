use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use statrs::function::gamma::gamma;

use crate::error::{Error, Result};
use crate::spectral::field::{Space, SpectralField};
use crate::spectral::grid::Grid;

/// A real Fourier multiplier, one value per mode in storage order.
#[derive(Clone, Debug)]
pub struct Multiplier {
    grid: Arc<Grid>,
    values: Vec<f64>,
}

impl Multiplier {
    pub fn new(grid: Arc<Grid>, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::LengthMismatch {
                expected: grid.len(),
                found: values.len(),
            });
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "multiplier value",
                value: *bad,
                constraint: "finite entries",
            });
        }
        Ok(Self { grid, values })
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn apply(&self, field: &SpectralField) -> Result<SpectralField> {
        field.expect_space(Space::Fourier)?;
        if **field.grid() != *self.grid {
            return Err(Error::GridMismatch);
        }
        let data = field
            .data()
            .iter()
            .zip(&self.values)
            .map(|(v, m)| v * m)
            .collect();
        Ok(field.with_data(data, Space::Fourier))
    }
}

/// `Lambda(xi) = sqrt(1 + |xi|^2)`.
pub fn lambda_multiplier(grid: &Arc<Grid>) -> Multiplier {
    let values = grid.mode_norms().iter().map(|k| (1.0 + k * k).sqrt()).collect();
    Multiplier {
        grid: Arc::clone(grid),
        values,
    }
}

/// Multiply every mode by `e^{-i t Lambda(xi)}` (the free propagator acting on `u`).
pub fn linear_propagator_apply(field: &SpectralField, t: f64) -> Result<SpectralField> {
    field.expect_space(Space::Fourier)?;
    if !t.is_finite() {
        return Err(Error::InvalidParameter {
            name: "t",
            value: t,
            constraint: "finite time",
        });
    }
    let data = field
        .data()
        .iter()
        .zip(field.grid().mode_norms())
        .map(|(v, k)| v * Complex64::from_polar(1.0, -t * (1.0 + k * k).sqrt()))
        .collect();
    Ok(field.with_data(data, Space::Fourier))
}

/// Constant in `F(|x|^-gamma)(xi) = c(gamma) |xi|^(gamma-3)`.
pub fn riesz_constant(gamma_exp: f64) -> f64 {
    if gamma_exp == 1.0 {
        return 4.0 * PI;
    }
    2f64.powf(3.0 - gamma_exp) * PI.powf(1.5) * gamma(0.5 * (3.0 - gamma_exp)) / gamma(0.5 * gamma_exp)
}

pub(crate) fn check_gamma(gamma_exp: f64) -> Result<()> {
    if !(gamma_exp > 0.0 && gamma_exp < 3.0) {
        return Err(Error::InvalidParameter {
            name: "gamma",
            value: gamma_exp,
            constraint: "0 < gamma < 3",
        });
    }
    Ok(())
}

/// Symbol of convolution with `|x|^-gamma`; the periodic zero mode is set to 0,
/// which removes the spatial mean of the interaction potential.
///
/// On radial grids there is no zero mode and the symbol is the per-mode
/// kernel transform used by the general-gamma convolution route.
pub fn riesz_symbol(grid: &Arc<Grid>, gamma_exp: f64) -> Result<Multiplier> {
    check_gamma(gamma_exp)?;
    let c = riesz_constant(gamma_exp);
    let values = grid
        .mode_norms()
        .iter()
        .map(|&k| if k == 0.0 { 0.0 } else { c * k.powf(gamma_exp - 3.0) })
        .collect();
    Ok(Multiplier {
        grid: Arc::clone(grid),
        values,
    })
}
