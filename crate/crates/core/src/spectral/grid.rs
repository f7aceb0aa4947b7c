use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GridKind {
    /// Spherically symmetric fields on `0 < r <= r_max`, stored through `w = r u`.
    Radial3D,
    /// Fields on the torus `[-L/2, L/2)^3` with `n` points per axis.
    Periodic3D,
}

/// Geometry and resolution of a computational grid.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub kind: GridKind,
    /// Radial points (Radial3D) or points per axis (Periodic3D).
    pub n: usize,
    /// `r_max` (Radial3D) or the box side `L` (Periodic3D).
    pub extent: f64,
    /// Default dealiasing policy for evolutions on this grid.
    pub dealias: bool,
}

impl GridSpec {
    pub fn radial(n: usize, r_max: f64) -> Self {
        Self {
            kind: GridKind::Radial3D,
            n,
            extent: r_max,
            dealias: false,
        }
    }

    pub fn periodic(n: usize, side: f64) -> Self {
        Self {
            kind: GridKind::Periodic3D,
            n,
            extent: side,
            dealias: true,
        }
    }

    pub fn with_dealias(mut self, dealias: bool) -> Self {
        self.dealias = dealias;
        self
    }

    /// Smallest accepted `n`; periodic grids go down to 8 so the brute-force
    /// interaction sums can run on them.
    pub fn min_n(kind: GridKind) -> usize {
        match kind {
            GridKind::Radial3D => 16,
            GridKind::Periodic3D => 8,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let min = Self::min_n(self.kind);
        if self.n < min || !self.n.is_power_of_two() {
            return Err(Error::InvalidGrid(format!(
                "n = {} must be a power of two and at least {min}",
                self.n
            )));
        }
        if !(self.extent.is_finite() && self.extent > 0.0) {
            return Err(Error::InvalidGrid(format!(
                "extent = {} must be positive and finite",
                self.extent
            )));
        }
        Ok(())
    }

    /// Number of stored values (points and modes coincide in count).
    pub fn len(&self) -> usize {
        match self.kind {
            GridKind::Radial3D => self.n,
            GridKind::Periodic3D => self.n * self.n * self.n,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A validated grid with its coordinates, dispersion table and FFT plans.
///
/// Radial3D: point `i` sits at `r = (i+1) r_max / n` and mode `i` at
/// `rho = (i+1) pi / r_max`; the last point (`r_max`) and last mode are
/// pinned to zero by the sine basis.
///
/// Periodic3D: point `(i0,i1,i2)` sits at `x_a = (i_a - n/2) h`, modes use FFT
/// ordering, storage is row-major with the last axis contiguous.
pub struct Grid {
    spec: GridSpec,
    mode_norms: Vec<f64>,
    plans: Plans,
}

enum Plans {
    Radial {
        sine: Arc<dyn Fft<f64>>,
    },
    Periodic {
        forward: Arc<dyn Fft<f64>>,
        inverse: Arc<dyn Fft<f64>>,
    },
}

impl fmt::Debug for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Grid").field("spec", &self.spec).finish()
    }
}

impl PartialEq for Grid {
    fn eq(&self, other: &Self) -> bool {
        // the dealiasing default is a run policy, not geometry
        self.spec.kind == other.spec.kind
            && self.spec.n == other.spec.n
            && self.spec.extent == other.spec.extent
    }
}

impl Grid {
    pub fn new(spec: GridSpec) -> Result<Arc<Self>> {
        spec.validate()?;
        let mut planner = FftPlanner::new();
        let plans = match spec.kind {
            GridKind::Radial3D => Plans::Radial {
                sine: planner.plan_fft_forward(2 * spec.n),
            },
            GridKind::Periodic3D => Plans::Periodic {
                forward: planner.plan_fft_forward(spec.n),
                inverse: planner.plan_fft_inverse(spec.n),
            },
        };
        let mut grid = Self {
            spec,
            mode_norms: Vec::new(),
            plans,
        };
        grid.mode_norms = (0..spec.len()).map(|i| grid.mode_norm(i)).collect();
        Ok(Arc::new(grid))
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    pub fn kind(&self) -> GridKind {
        self.spec.kind
    }

    pub fn n(&self) -> usize {
        self.spec.n
    }

    pub fn len(&self) -> usize {
        self.spec.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn extent(&self) -> f64 {
        self.spec.extent
    }

    /// Physical spacing: `r_max/n` or `L/n`.
    pub fn spacing(&self) -> f64 {
        self.spec.extent / self.spec.n as f64
    }

    /// Mode spacing: `pi/r_max` or `2 pi/L`.
    pub fn mode_spacing(&self) -> f64 {
        match self.spec.kind {
            GridKind::Radial3D => PI / self.spec.extent,
            GridKind::Periodic3D => 2.0 * PI / self.spec.extent,
        }
    }

    /// Signed FFT index of a storage coordinate.
    pub fn signed_index(&self, i: usize) -> i64 {
        let n = self.spec.n as i64;
        let i = i as i64;
        if i < n / 2 {
            i
        } else {
            i - n
        }
    }

    /// Periodic3D storage index to per-axis indices.
    pub fn unravel(&self, idx: usize) -> [usize; 3] {
        let n = self.spec.n;
        [idx / (n * n), (idx / n) % n, idx % n]
    }

    pub fn ravel(&self, ijk: [usize; 3]) -> usize {
        let n = self.spec.n;
        (ijk[0] * n + ijk[1]) * n + ijk[2]
    }

    /// Integer lattice vector of a Periodic3D mode.
    pub fn mode_lattice(&self, idx: usize) -> [i64; 3] {
        let [a, b, c] = self.unravel(idx);
        [self.signed_index(a), self.signed_index(b), self.signed_index(c)]
    }

    /// Storage index of the mode with the given (wrapped) lattice vector.
    pub fn lattice_to_index(&self, k: [i64; 3]) -> usize {
        let n = self.spec.n as i64;
        let w = |v: i64| v.rem_euclid(n) as usize;
        self.ravel([w(k[0]), w(k[1]), w(k[2])])
    }

    /// Mode coordinate: `(rho, 0, 0)` on radial grids.
    pub fn mode_vector(&self, idx: usize) -> [f64; 3] {
        match self.spec.kind {
            GridKind::Radial3D => [(idx + 1) as f64 * self.mode_spacing(), 0.0, 0.0],
            GridKind::Periodic3D => {
                let dk = self.mode_spacing();
                let k = self.mode_lattice(idx);
                [k[0] as f64 * dk, k[1] as f64 * dk, k[2] as f64 * dk]
            }
        }
    }

    fn mode_norm(&self, idx: usize) -> f64 {
        let v = self.mode_vector(idx);
        (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
    }

    /// `|xi|` for every mode, in storage order.
    pub fn mode_norms(&self) -> &[f64] {
        &self.mode_norms
    }

    /// Point coordinate: `(r, 0, 0)` on radial grids.
    pub fn point(&self, idx: usize) -> [f64; 3] {
        let h = self.spacing();
        match self.spec.kind {
            GridKind::Radial3D => [(idx + 1) as f64 * h, 0.0, 0.0],
            GridKind::Periodic3D => {
                let half = (self.spec.n / 2) as f64;
                let [a, b, c] = self.unravel(idx);
                [
                    (a as f64 - half) * h,
                    (b as f64 - half) * h,
                    (c as f64 - half) * h,
                ]
            }
        }
    }

    /// `|x|` of a point.
    pub fn point_norm(&self, idx: usize) -> f64 {
        let p = self.point(idx);
        (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt()
    }

    /// Quadrature weight of `int |u|^2 dx` per stored physical value.
    pub fn physical_weight(&self, idx: usize) -> f64 {
        let h = self.spacing();
        match self.spec.kind {
            GridKind::Radial3D => {
                let r = (idx + 1) as f64 * h;
                4.0 * PI * h * r * r
            }
            GridKind::Periodic3D => h * h * h,
        }
    }

    /// Weight `c` with `(2 pi)^-3 int |u_hat|^2 dxi = c * sum |stored|^2`.
    pub fn fourier_weight(&self) -> f64 {
        match self.spec.kind {
            GridKind::Radial3D => 8.0 * PI / self.spec.extent,
            GridKind::Periodic3D => self.spec.extent.powi(-3),
        }
    }

    /// Factor turning the stored Fourier value of a mode into `u_hat(xi)`.
    /// Radial storage holds `rho u_hat(rho) / (4 pi)`.
    pub fn fourier_amplitude_scale(&self, idx: usize) -> f64 {
        match self.spec.kind {
            GridKind::Radial3D => 4.0 * PI / ((idx + 1) as f64 * self.mode_spacing()),
            GridKind::Periodic3D => 1.0,
        }
    }

    /// Modes kept by the 2/3 rule: spherical truncation at `|k| <= n/3` on
    /// Periodic3D, index cut at `2n/3` on Radial3D.
    pub fn dealias_mask(&self) -> Vec<bool> {
        let n = self.spec.n as f64;
        match self.spec.kind {
            GridKind::Radial3D => (0..self.len())
                .map(|i| ((i + 1) as f64) <= 2.0 * n / 3.0)
                .collect(),
            GridKind::Periodic3D => {
                let cut = (n / 3.0).powi(2);
                (0..self.len())
                    .map(|i| {
                        let k = self.mode_lattice(i);
                        ((k[0] * k[0] + k[1] * k[1] + k[2] * k[2]) as f64) <= cut
                    })
                    .collect()
            }
        }
    }

    pub(crate) fn sine_plan(&self) -> &Arc<dyn Fft<f64>> {
        match &self.plans {
            Plans::Radial { sine } => sine,
            Plans::Periodic { .. } => unreachable!("sine plan requested on a periodic grid"),
        }
    }

    pub(crate) fn periodic_plans(&self) -> (&Arc<dyn Fft<f64>>, &Arc<dyn Fft<f64>>) {
        match &self.plans {
            Plans::Periodic { forward, inverse } => (forward, inverse),
            Plans::Radial { .. } => unreachable!("3D plans requested on a radial grid"),
        }
    }

    /// Effective support radius of a physical field: the largest `|x|` where
    /// `|u| >= threshold`.
    pub fn support_radius(&self, data: &[Complex64], threshold: f64) -> f64 {
        data.iter()
            .enumerate()
            .filter(|(_, v)| v.norm() >= threshold)
            .map(|(i, _)| self.point_norm(i))
            .fold(0.0, f64::max)
    }
}

/// Propagation rule for radial runs: `r_max >= r_data + t_end + 10`.
pub fn check_propagation_domain(grid: &Grid, r_data: f64, t_end: f64) -> Result<()> {
    if grid.kind() != GridKind::Radial3D {
        return Ok(());
    }
    let required = r_data + t_end + 10.0;
    if grid.extent() < required {
        return Err(Error::DomainTooSmall {
            required,
            actual: grid.extent(),
        });
    }
    Ok(())
}
