//! Free-flow decay, stationary points of the semi-relativistic phase, and
//! the truncated Fourier transform of `|eta|^-2`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::diagnostics::{fourier_weighted_sup, sobolev_norm};
use crate::dyadic::{base_cutoff, OUTER};
use crate::dynamics::SUPPORT_THRESHOLD;
use crate::error::{Error, Result};
use crate::quadrature::adaptive;
use crate::spectral::{
    check_propagation_domain, forward_transform, inverse_transform, linear_propagator_apply,
    Space, SpectralField,
};

fn to_fourier(u0: &SpectralField) -> Result<SpectralField> {
    match u0.space() {
        Space::Physical => forward_transform(u0),
        Space::Fourier => Ok(u0.clone()),
    }
}

fn to_physical(u0: &SpectralField) -> Result<SpectralField> {
    match u0.space() {
        Space::Physical => Ok(u0.clone()),
        Space::Fourier => inverse_transform(u0),
    }
}

/// `sup_x |e^{-it Lambda} u0|` over the grid points.
pub fn dispersive_sup(u0: &SpectralField, t: f64) -> Result<f64> {
    let physical = to_physical(u0)?;
    let r_data = physical.grid().support_radius(physical.data(), SUPPORT_THRESHOLD);
    check_propagation_domain(physical.grid(), r_data, t.abs())?;
    if t == 0.0 {
        return Ok(physical.max_abs());
    }
    let evolved = linear_propagator_apply(&to_fourier(u0)?, t)?;
    Ok(inverse_transform(&evolved)?.max_abs())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DecayRow {
    pub t: f64,
    pub sup: f64,
    /// `sup (1+t)^{3/2} / ||(1+|xi|)^6 u0_hat||_inf`.
    pub constant: f64,
    /// `(1+t)^{-31/20} (||<x>^2 u0||_{L^2} + ||u0||_{H^50})`, the faster term.
    pub second_term: f64,
}

pub fn decay_bound_check(u0: &SpectralField, times: &[f64]) -> Result<Vec<DecayRow>> {
    let uhat = to_fourier(u0)?;
    let physical = to_physical(u0)?;
    let m = fourier_weighted_sup(&uhat, 6.0)?;
    if !(m > 0.0) {
        return Err(Error::Degenerate("initial datum has zero weighted Fourier norm".into()));
    }
    let grid = physical.grid();
    let weighted: f64 = physical
        .data()
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let r2 = grid.point_norm(i).powi(2);
            grid.physical_weight(i) * (1.0 + r2).powi(2) * v.norm_sqr()
        })
        .sum::<f64>()
        .sqrt();
    let high = sobolev_norm(&uhat, 50.0)?;
    times
        .iter()
        .map(|&t| {
            let sup = dispersive_sup(u0, t)?;
            let g = 1.0 + t.abs();
            Ok(DecayRow {
                t,
                sup,
                constant: sup * g.powf(1.5) / m,
                second_term: g.powf(-31.0 / 20.0) * (weighted + high),
            })
        })
        .collect()
}

/// Critical point of `Lambda(xi) + xi . x / t`: `xi0 = -x / sqrt(t^2 - |x|^2)`.
pub fn stationary_point(x: [f64; 3], t: f64) -> Result<[f64; 3]> {
    let r = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
    if !(t > r) || !t.is_finite() {
        return Err(Error::NoStationaryPoint { x_norm: r, t });
    }
    let d = ((t - r) * (t + r)).sqrt();
    Ok([-x[0] / d, -x[1] / d, -x[2] / d])
}

/// `int e^{i eta . x} |eta|^-2 phi(eta 2^-l) d eta`, reduced to
/// `(4 pi / |x|) int_0^inf sin(rho |x|) / rho * phi(rho 2^-l) d rho`.
///
/// The reduction is exact and real; the imaginary part is identically zero.
pub fn truncated_riesz_kernel(x: [f64; 3], l: i32) -> Result<Complex64> {
    let r = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::InvalidParameter {
            name: "x",
            value: r,
            constraint: "0 < |x| < inf",
        });
    }
    let scale = 2f64.powi(l);
    let end = OUTER * scale;
    let integrand = |rho: f64| {
        let arg = rho * r;
        // sin(arg)/rho = r sinc(arg), continuous at 0
        let sinc = if arg.abs() < 1e-8 { 1.0 - arg * arg / 6.0 } else { arg.sin() / arg };
        r * sinc * base_cutoff(rho / scale)
    };
    // split at the zeros k pi / |x| of the sine
    let period = PI / r;
    let mut total = 0.0;
    let mut lo = 0.0;
    while lo < end {
        let hi = (lo + period).min(end);
        total += adaptive(lo, hi, 1e-12, 1e-16, &integrand);
        lo = hi;
    }
    Ok(Complex64::new(4.0 * PI / r * total, 0.0))
}

/// Table row for the kernel rate check.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KernelRow {
    pub x_norm: f64,
    pub l: i32,
    pub value: f64,
    /// `|value - 2 pi^2 / |x|| * |x|^2 * 2^l`.
    pub error_bound_ratio: f64,
}

pub fn kernel_table(x_norms: &[f64], levels: &[i32]) -> Result<Vec<KernelRow>> {
    let mut rows = Vec::new();
    for &r in x_norms {
        for &l in levels {
            let value = truncated_riesz_kernel([0.0, 0.0, r], l)?.re;
            let err = (value - 2.0 * PI * PI / r).abs();
            rows.push(KernelRow {
                x_norm: r,
                l,
                value,
                error_bound_ratio: err * r * r * 2f64.powi(l),
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{evolve, EvolutionParams};
    use crate::spectral::{Grid, GridSpec};
    use proptest::prelude::*;
    use std::sync::Arc;

    fn grad_lambda(xi: [f64; 3]) -> [f64; 3] {
        let g = (1.0 + xi.iter().map(|v| v * v).sum::<f64>()).sqrt();
        [xi[0] / g, xi[1] / g, xi[2] / g]
    }

    #[test]
    fn stationary_point_examples() {
        assert_eq!(stationary_point([0.0; 3], 3.0).unwrap(), [0.0; 3]);
        let t = 5.0;
        let x = [t / 2f64.sqrt(), 0.0, 0.0];
        let xi = stationary_point(x, t).unwrap();
        assert!((xi.iter().map(|v| v * v).sum::<f64>().sqrt() - 1.0).abs() < 1e-14);
        assert!(matches!(stationary_point([3.0, 4.0, 0.0], 5.0), Err(Error::NoStationaryPoint { .. })));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn stationary_point_zeroes_gradient(
            dir in proptest::array::uniform3(-1.0f64..1.0),
            frac in 0.0f64..0.999,
            t in 0.1f64..1e3,
        ) {
            let n = dir.iter().map(|v| v * v).sum::<f64>().sqrt();
            prop_assume!(n > 1e-3);
            let x = [dir[0] / n * frac * t, dir[1] / n * frac * t, dir[2] / n * frac * t];
            let xi = stationary_point(x, t).unwrap();
            let g = grad_lambda(xi);
            for c in 0..3 {
                prop_assert!((g[c] + x[c] / t).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn dispersive_sup_at_zero_and_free_evolve() {
        let g = Grid::new(GridSpec::radial(1024, 64.0)).unwrap();
        let u0 = SpectralField::gaussian(Arc::clone(&g), 0.3, 1.0);
        assert_eq!(dispersive_sup(&u0, 0.0).unwrap(), u0.max_abs());
        let p = EvolutionParams { lambda: 0.0, t_end: 10.0, dt: 0.1, sample_every: 100, ..Default::default() };
        let last = evolve(&u0, &p, &mut []).unwrap().pop().unwrap();
        let a = dispersive_sup(&u0, 10.0).unwrap();
        assert!((a - last.linf_u).abs() <= 1e-12 * a);
        assert!(matches!(dispersive_sup(&u0, 100.0), Err(Error::DomainTooSmall { .. })));
    }

    #[test]
    fn decay_table_trivia() {
        let g = Grid::new(GridSpec::radial(1024, 64.0)).unwrap();
        let u0 = SpectralField::gaussian(Arc::clone(&g), 0.3, 1.0);
        let rows = decay_bound_check(&u0, &[0.0]).unwrap();
        let m = fourier_weighted_sup(&forward_transform(&u0).unwrap(), 6.0).unwrap();
        assert!((rows[0].constant - u0.max_abs() / m).abs() < 1e-14);
        let times = [0.0, 3.0, 9.0];
        let a = decay_bound_check(&u0, &times).unwrap();
        let b = decay_bound_check(&u0.scale(Complex64::new(-7.5, 0.0)), &times).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!((x.constant - y.constant).abs() < 1e-12 * x.constant);
        }
    }

    #[test]
    fn kernel_limit_and_errors() {
        let v = truncated_riesz_kernel([0.0, 1.0, 0.0], 12).unwrap();
        assert!((v.re - 2.0 * PI * PI).abs() < 1e-3);
        assert_eq!(v.im, 0.0);
        assert!(truncated_riesz_kernel([0.0; 3], 3).is_err());
        // depends on |x| only
        let a = truncated_riesz_kernel([3.0, 0.0, 4.0], 4).unwrap();
        let b = truncated_riesz_kernel([0.0, 5.0, 0.0], 4).unwrap();
        assert!((a - b).norm() < 1e-12 * a.norm());
    }

    #[test]
    fn kernel_matches_independent_sum() {
        // Abel-free check: for a compactly supported cutoff, integrate
        // sin(rho r)/rho phi by plain composite Gauss-Legendre
        let r = 2.5;
        let l = 3;
        let fast = truncated_riesz_kernel([r, 0.0, 0.0], l).unwrap().re;
        let gl = crate::quadrature::GaussLegendre::new(20);
        let end = OUTER * 2f64.powi(l);
        let slow = 4.0 * PI / r
            * gl.integrate_composite(0.0, end, 4000, |rho| {
                (rho * r).sin() / rho * base_cutoff(rho / 2f64.powi(l))
            });
        assert!((fast - slow).abs() < 1e-9 * slow.abs(), "{fast} vs {slow}");
    }
}
