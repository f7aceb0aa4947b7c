use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::spectral::grid::{Grid, GridKind};

/// Coulomb potential `(|x|^-1 * rho)(r)` of a radial density by Newton's theorem:
/// `4 pi / r int_0^r s^2 rho + 4 pi int_r^{r_max} s rho`, with cumulative
/// trapezoid sums over the radial points (the origin contributes zero).
///
/// The discrete operator is `4 pi h sum_i s_i^2 rho_i / max(r, s_i)`, a
/// symmetric kernel, so the semi-discrete Hartree flow keeps its Hamiltonian.
pub fn newton_radial_convolution(grid: &Grid, density: &[f64]) -> Result<Vec<f64>> {
    if grid.kind() != GridKind::Radial3D {
        return Err(Error::UnsupportedGrid {
            op: "newton_radial_convolution",
            kind: grid.kind(),
        });
    }
    let n = grid.n();
    if density.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: density.len(),
        });
    }
    let h = grid.spacing();
    let r = |i: usize| (i + 1) as f64 * h;

    let mut inner = vec![0.0; n];
    let mut acc = 0.0;
    let mut prev = 0.0;
    for i in 0..n {
        let cur = r(i) * r(i) * density[i];
        acc += 0.5 * h * (prev + cur);
        inner[i] = acc;
        prev = cur;
    }

    let mut outer = vec![0.0; n];
    let mut acc = 0.0;
    for i in (0..n - 1).rev() {
        acc += 0.5 * h * (r(i) * density[i] + r(i + 1) * density[i + 1]);
        outer[i] = acc;
    }

    Ok((0..n)
        .map(|i| 4.0 * PI * (inner[i] / r(i) + outer[i]))
        .collect())
}
