//! Physical <-> Fourier transforms with the convention
//! `u_hat(xi) = int e^{-i x.xi} u(x) dx`, `u(x) = (2 pi)^-3 int e^{i x.xi} u_hat dxi`.
//!
//! Radial3D reduces to a type-I discrete sine transform of `w = r u`;
//! Periodic3D is a centred 3D FFT scaled by the cell volume.

use std::sync::Arc;

use num_complex::Complex64;
use rustfft::Fft;

use crate::error::Result;
use crate::spectral::field::{Space, SpectralField};
use crate::spectral::grid::{Grid, GridKind};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

pub fn forward_transform(field: &SpectralField) -> Result<SpectralField> {
    field.expect_space(Space::Physical)?;
    let grid = field.grid();
    let data = match grid.kind() {
        GridKind::Radial3D => radial_forward(grid, field.data()),
        GridKind::Periodic3D => periodic_forward(grid, field.data()),
    };
    Ok(field.with_data(data, Space::Fourier))
}

pub fn inverse_transform(field: &SpectralField) -> Result<SpectralField> {
    field.expect_space(Space::Fourier)?;
    let grid = field.grid();
    let data = match grid.kind() {
        GridKind::Radial3D => radial_inverse(grid, field.data()),
        GridKind::Periodic3D => periodic_inverse(grid, field.data()),
    };
    Ok(field.with_data(data, Space::Physical))
}

/// `S_k = sum_{j=1}^{n-1} x_j sin(pi j k / n)` for `k = 1..n-1`, via a complex
/// FFT of the odd extension. `x[j-1]` holds `x_j`; `x[n-1]` is ignored and the
/// returned `S[n-1]` is zero.
pub(crate) fn sine_transform(plan: &Arc<dyn Fft<f64>>, x: &[Complex64]) -> Vec<Complex64> {
    let n = x.len();
    let zero = Complex64::new(0.0, 0.0);
    let mut buf = vec![zero; 2 * n];
    for j in 1..n {
        buf[j] = x[j - 1];
        buf[2 * n - j] = -x[j - 1];
    }
    plan.process(&mut buf);
    // F_k = -2i S_k
    let mut out = vec![zero; n];
    for k in 1..n {
        out[k - 1] = buf[k] * I * 0.5;
    }
    out
}

fn radial_forward(grid: &Grid, u: &[Complex64]) -> Vec<Complex64> {
    let h = grid.spacing();
    let w: Vec<Complex64> = u
        .iter()
        .enumerate()
        .map(|(i, v)| v * ((i + 1) as f64 * h))
        .collect();
    sine_transform(grid.sine_plan(), &w)
        .into_iter()
        .map(|s| s * h)
        .collect()
}

fn radial_inverse(grid: &Grid, coeffs: &[Complex64]) -> Vec<Complex64> {
    let h = grid.spacing();
    let scale = 2.0 / grid.extent();
    let n = grid.n();
    let mut w = sine_transform(grid.sine_plan(), coeffs);
    for (i, v) in w.iter_mut().enumerate() {
        if i + 1 == n {
            *v = Complex64::new(0.0, 0.0);
        } else {
            *v *= scale / ((i + 1) as f64 * h);
        }
    }
    w
}

/// `(-1)^(k0+k1+k2)`: phase of the centred grid offset `x = (j - n/2) h`.
fn checkerboard(grid: &Grid, idx: usize) -> f64 {
    let [a, b, c] = grid.unravel(idx);
    if (a + b + c) % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

fn periodic_forward(grid: &Grid, u: &[Complex64]) -> Vec<Complex64> {
    let (forward, _) = grid.periodic_plans();
    let mut data = u.to_vec();
    fft3(grid.n(), forward, &mut data);
    let cell = grid.spacing().powi(3);
    for (i, v) in data.iter_mut().enumerate() {
        *v *= cell * checkerboard(grid, i);
    }
    data
}

fn periodic_inverse(grid: &Grid, coeffs: &[Complex64]) -> Vec<Complex64> {
    let (_, inverse) = grid.periodic_plans();
    let mut data: Vec<Complex64> = coeffs
        .iter()
        .enumerate()
        .map(|(i, v)| v * checkerboard(grid, i))
        .collect();
    fft3(grid.n(), inverse, &mut data);
    let scale = grid.extent().powi(-3);
    for v in data.iter_mut() {
        *v *= scale;
    }
    data
}

/// In-place unnormalized 3D transform of a row-major `n^3` array.
fn fft3(n: usize, plan: &Arc<dyn Fft<f64>>, data: &mut [Complex64]) {
    // last axis is contiguous: rustfft processes every length-n chunk
    plan.process(data);
    let mut line = vec![Complex64::new(0.0, 0.0); n];
    // middle axis
    for a in 0..n {
        for c in 0..n {
            for b in 0..n {
                line[b] = data[(a * n + b) * n + c];
            }
            plan.process(&mut line);
            for b in 0..n {
                data[(a * n + b) * n + c] = line[b];
            }
        }
    }
    // first axis
    for b in 0..n {
        for c in 0..n {
            for a in 0..n {
                line[a] = data[(a * n + b) * n + c];
            }
            plan.process(&mut line);
            for a in 0..n {
                data[(a * n + b) * n + c] = line[a];
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::grid::GridSpec;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn random_field(grid: Arc<Grid>, seed: u64) -> SpectralField {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let radial = grid.kind() == GridKind::Radial3D;
        let n = grid.len();
        let data = (0..n)
            .map(|i| {
                if radial && i + 1 == n {
                    Complex64::new(0.0, 0.0)
                } else {
                    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
                }
            })
            .collect();
        SpectralField::new(grid, data, Space::Physical).unwrap()
    }

    #[test]
    fn roundtrip_and_plancherel_both_grids() {
        let grids = [
            Grid::new(GridSpec::radial(256, 30.0)).unwrap(),
            Grid::new(GridSpec::periodic(16, 7.0)).unwrap(),
        ];
        for grid in grids {
            for seed in 0..100 {
                let u = random_field(Arc::clone(&grid), seed);
                let uh = forward_transform(&u).unwrap();
                let back = inverse_transform(&uh).unwrap();
                assert!(back.relative_max_diff(&u) < 1e-12);
                let (p, f) = (u.norm_sq(), uh.norm_sq());
                assert!((p - f).abs() <= 1e-12 * p, "{p} vs {f}");
            }
        }
    }

    #[test]
    fn periodic_gaussian_transform() {
        let grid = Grid::new(GridSpec::periodic(64, 24.0)).unwrap();
        let u = SpectralField::gaussian(Arc::clone(&grid), 1.0, 1.0);
        let uh = forward_transform(&u).unwrap();
        let mut worst: f64 = 0.0;
        for (i, &k) in grid.mode_norms().iter().enumerate() {
            let exact = (2.0 * PI).powf(1.5) * (-0.5 * k * k).exp();
            worst = worst.max((uh.data()[i] - exact).norm());
        }
        assert!(worst < 1e-8, "{worst}");
    }

    #[test]
    fn radial_transform_matches_quadrature() {
        let grid = Grid::new(GridSpec::radial(1024, 20.0)).unwrap();
        let u = SpectralField::from_radial_fn(Arc::clone(&grid), |r| Complex64::new((-r * r).exp(), 0.0));
        let uh = forward_transform(&u).unwrap();
        let nodes = crate::quadrature::GaussLegendre::new(64);
        for idx in [0usize, 5, 20, 60] {
            let rho = grid.mode_norms()[idx];
            // 4 pi int r^2 sin(rho r)/(rho r) e^{-r^2} dr on [0, 8]
            let exact = nodes.integrate_composite(0.0, 8.0, 16, |r| {
                4.0 * PI * r * (rho * r).sin() / rho * (-r * r).exp()
            });
            let got = uh.fourier_value(idx).unwrap();
            assert!((got.re - exact).abs() < 1e-8 && got.im.abs() < 1e-12, "{got} vs {exact}");
        }
    }

    #[test]
    fn periodic_constant_spectrum_is_a_spike() {
        let grid = Grid::new(GridSpec::periodic(16, 5.0)).unwrap();
        let c = Complex64::new(0.7, 0.0);
        let uh = SpectralField::new(Arc::clone(&grid), vec![c; grid.len()], Space::Fourier).unwrap();
        let u = inverse_transform(&uh).unwrap();
        let origin = grid.ravel([8, 8, 8]);
        let dk = grid.mode_spacing();
        // (2 pi)^-3 * (number of modes) * (mode cell volume) * c
        let expected = (2.0 * PI).powi(-3) * grid.len() as f64 * dk.powi(3) * c.re;
        for (i, v) in u.data().iter().enumerate() {
            let want = if i == origin { expected } else { 0.0 };
            assert!((v.re - want).abs() < 1e-10 && v.im.abs() < 1e-10);
        }
    }

    #[test]
    fn zero_maps_to_zero_and_space_is_checked() {
        let grid = Grid::new(GridSpec::radial(64, 10.0)).unwrap();
        let z = SpectralField::zeros(Arc::clone(&grid), Space::Physical);
        assert_eq!(forward_transform(&z).unwrap().max_abs(), 0.0);
        assert!(inverse_transform(&z).is_err());
        let zf = SpectralField::zeros(grid, Space::Fourier);
        assert!(forward_transform(&zf).is_err());
        assert_eq!(inverse_transform(&zf).unwrap().max_abs(), 0.0);
    }
}
