//! Shared fixtures for the criterion benches.

use std::sync::Arc;

use num_complex::Complex64;
use relhartree_core::{Grid, GridSpec, SpectralField};

pub fn radial_gaussian(n: usize, r_max: f64) -> SpectralField {
    let grid = Grid::new(GridSpec::radial(n, r_max)).expect("valid radial grid");
    SpectralField::gaussian(grid, 0.1, 1.0)
}

/// Off-centre, complex-valued datum so no symmetry shortcut applies.
pub fn periodic_bump(n: usize, side: f64) -> SpectralField {
    let grid: Arc<Grid> = Grid::new(GridSpec::periodic(n, side)).expect("valid periodic grid");
    SpectralField::from_fn(grid, |p| {
        let r2 = (p[0] - 0.5).powi(2) + p[1] * p[1] + (p[2] + 0.3).powi(2);
        Complex64::new(1.0, 0.5 * p[0]) * (-r2 / 2.0).exp() * 0.1
    })
}
