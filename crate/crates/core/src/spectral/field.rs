use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectral::grid::{Grid, GridKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Space {
    Physical,
    Fourier,
}

/// A complex field on a grid, tagged with the space it lives in.
///
/// Radial3D physical data stores `u(r_j)`; Fourier data stores
/// `rho u_hat(rho) / (4 pi)`, i.e. the sine coefficients of `r u(r)`.
#[derive(Clone, Debug)]
pub struct SpectralField {
    grid: Arc<Grid>,
    data: Vec<Complex64>,
    space: Space,
}

impl SpectralField {
    pub fn new(grid: Arc<Grid>, data: Vec<Complex64>, space: Space) -> Result<Self> {
        if data.len() != grid.len() {
            return Err(Error::LengthMismatch {
                expected: grid.len(),
                found: data.len(),
            });
        }
        Ok(Self { grid, data, space })
    }

    pub fn zeros(grid: Arc<Grid>, space: Space) -> Self {
        let data = vec![Complex64::new(0.0, 0.0); grid.len()];
        Self { grid, data, space }
    }

    /// Physical field sampled from a function of the point coordinate.
    /// On radial grids the point is `(r, 0, 0)`; the boundary value at
    /// `r_max` is forced to zero.
    pub fn from_fn(grid: Arc<Grid>, f: impl Fn([f64; 3]) -> Complex64) -> Self {
        let mut data: Vec<Complex64> = (0..grid.len()).map(|i| f(grid.point(i))).collect();
        if grid.kind() == GridKind::Radial3D {
            if let Some(last) = data.last_mut() {
                *last = Complex64::new(0.0, 0.0);
            }
        }
        Self {
            grid,
            data,
            space: Space::Physical,
        }
    }

    /// Physical field sampled from a function of `|x|`.
    pub fn from_radial_fn(grid: Arc<Grid>, f: impl Fn(f64) -> Complex64) -> Self {
        Self::from_fn(grid, |p| f((p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt()))
    }

    /// Gaussian `amplitude * exp(-|x|^2 / (2 width^2))`.
    pub fn gaussian(grid: Arc<Grid>, amplitude: f64, width: f64) -> Self {
        Self::from_radial_fn(grid, |r| {
            Complex64::new(amplitude * (-0.5 * r * r / (width * width)).exp(), 0.0)
        })
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [Complex64] {
        &mut self.data
    }

    pub fn into_data(self) -> Vec<Complex64> {
        self.data
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn expect_space(&self, expected: Space) -> Result<()> {
        if self.space != expected {
            return Err(Error::WrongSpace {
                expected,
                found: self.space,
            });
        }
        Ok(())
    }

    pub fn expect_same_grid(&self, other: &SpectralField) -> Result<()> {
        if *self.grid != *other.grid {
            return Err(Error::GridMismatch);
        }
        Ok(())
    }

    pub(crate) fn with_data(&self, data: Vec<Complex64>, space: Space) -> Self {
        debug_assert_eq!(data.len(), self.grid.len());
        Self {
            grid: Arc::clone(&self.grid),
            data,
            space,
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        self.with_data(self.data.iter().map(|v| v * c).collect(), self.space)
    }

    pub fn conj(&self) -> Self {
        self.with_data(self.data.iter().map(|v| v.conj()).collect(), self.space)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.re.is_finite() && v.im.is_finite())
    }

    /// `sup |stored value|`.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// `||u||_{L^2}^2` using the quadrature weights of the field's space.
    pub fn norm_sq(&self) -> f64 {
        match self.space {
            Space::Physical => self
                .data
                .iter()
                .enumerate()
                .map(|(i, v)| self.grid.physical_weight(i) * v.norm_sqr())
                .sum(),
            Space::Fourier => {
                self.grid.fourier_weight() * self.data.iter().map(|v| v.norm_sqr()).sum::<f64>()
            }
        }
    }

    /// `u_hat(xi)` at a mode (undoing the radial storage weight).
    pub fn fourier_value(&self, idx: usize) -> Result<Complex64> {
        self.expect_space(Space::Fourier)?;
        Ok(self.data[idx] * self.grid.fourier_amplitude_scale(idx))
    }

    /// Largest componentwise distance, divided by the largest magnitude of `other`.
    pub fn relative_max_diff(&self, other: &SpectralField) -> f64 {
        let scale = other.max_abs().max(f64::MIN_POSITIVE);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
            / scale
    }
}
