//! Conserved quantities, weighted norms and decay-exponent fits.

use std::io::Write;

use crate::dynamics::{EvolutionParams, HartreeSystem};
use crate::error::{Error, Result};
use crate::spectral::{forward_transform, inverse_transform, Space, SpectralField};

/// Default `w` in `sup (1+|xi|)^w |f_hat|`.
pub const DEFAULT_WEIGHT: f64 = 10.0;
/// Default `N` of the `H^N` norm.
pub const DEFAULT_SOBOLEV_ORDER: f64 = 8.0;
/// Growth allowance in the a priori norm.
pub const DEFAULT_P0: f64 = 1.0 / 1000.0;

fn physical(u: &SpectralField) -> Result<SpectralField> {
    match u.space() {
        Space::Physical => Ok(u.clone()),
        Space::Fourier => inverse_transform(u),
    }
}

fn fourier(u: &SpectralField) -> Result<SpectralField> {
    match u.space() {
        Space::Physical => forward_transform(u),
        Space::Fourier => Ok(u.clone()),
    }
}

/// `(2 pi)^-3 sum_xi m(|xi|) |u_hat(xi)|^2` with the grid's Plancherel weight.
fn fourier_quadratic(uhat: &SpectralField, m: impl Fn(f64) -> f64) -> f64 {
    let grid = uhat.grid();
    grid.fourier_weight()
        * uhat
            .data()
            .iter()
            .zip(grid.mode_norms())
            .map(|(v, &k)| m(k) * v.norm_sqr())
            .sum::<f64>()
}

/// `||u||_{L^2}` (either space; Plancherel makes them agree).
pub fn mass(u: &SpectralField) -> f64 {
    u.norm_sq().sqrt()
}

/// `E = 1/2 <u, Lambda u> + lambda/4 int (K_gamma * |u|^2) |u|^2`.
pub fn energy(u: &SpectralField, gamma: f64, lambda: f64) -> Result<f64> {
    let params = EvolutionParams {
        gamma,
        lambda,
        ..EvolutionParams::default()
    };
    let system = HartreeSystem::new(u.grid(), params)?;
    energy_with(&system, u)
}

/// Energy using a prebuilt system (avoids rebuilding the kernel per call).
pub fn energy_with(system: &HartreeSystem, u: &SpectralField) -> Result<f64> {
    let lambda = system.params().lambda;
    let uhat = fourier(u)?;
    let kinetic = 0.5 * fourier_quadratic(&uhat, |k| (1.0 + k * k).sqrt());
    if lambda == 0.0 {
        return Ok(kinetic);
    }
    let u = physical(u)?;
    let grid = u.grid();
    let density: Vec<f64> = u.data().iter().map(|v| v.norm_sqr()).collect();
    let pot = system.potential(&density)?;
    let quartic: f64 = density
        .iter()
        .zip(&pot)
        .enumerate()
        .map(|(i, (d, p))| grid.physical_weight(i) * d * p)
        .sum();
    Ok(kinetic + 0.25 * lambda * quartic)
}

/// `||u||_{H^s} = ||<xi>^s u_hat||_{L^2}`.
pub fn sobolev_norm(u: &SpectralField, order: f64) -> Result<f64> {
    let uhat = fourier(u)?;
    Ok(fourier_quadratic(&uhat, |k| (1.0 + k * k).powf(order)).sqrt())
}

/// `(||<x> f||_{H^2}, ||<x>^2 f||_{H^2})`.
pub fn weighted_profile_norms(f: &SpectralField) -> Result<(f64, f64)> {
    let f = physical(f)?;
    let grid = f.grid();
    let weighted = |power: i32| -> Result<f64> {
        let data = f
            .data()
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let r = grid.point_norm(i);
                v * (1.0 + r * r).sqrt().powi(power)
            })
            .collect();
        let g = SpectralField::new(grid.clone(), data, Space::Physical)?;
        sobolev_norm(&g, 2.0)
    };
    Ok((weighted(1)?, weighted(2)?))
}

/// `sup_xi (1 + |xi|)^w |f_hat(xi)|`.
pub fn fourier_weighted_sup(fhat: &SpectralField, w: f64) -> Result<f64> {
    fhat.expect_space(Space::Fourier)?;
    let grid = fhat.grid();
    Ok(fhat
        .data()
        .iter()
        .enumerate()
        .map(|(i, v)| (1.0 + grid.mode_norms()[i]).powf(w) * v.norm() * grid.fourier_amplitude_scale(i))
        .fold(0.0, f64::max))
}

/// Per-sample diagnostics; every entry is finite and nonnegative except
/// `energy`, which carries the sign of the quartic term.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiagnosticsRecord {
    pub t: f64,
    pub mass: f64,
    pub energy: f64,
    pub linf_u: f64,
    pub sobolev_hn: f64,
    pub weight1_h2: f64,
    pub weight2_h2: f64,
    pub fourier_sup: f64,
    pub xnorm: f64,
}

impl DiagnosticsRecord {
    pub const CSV_HEADER: &'static str =
        "t,mass,energy,linf_u,sobolev_hN,weight1_h2,weight2_h2,fourier_sup,xnorm";

    pub fn csv_row(&self) -> String {
        [
            self.t,
            self.mass,
            self.energy,
            self.linf_u,
            self.sobolev_hn,
            self.weight1_h2,
            self.weight2_h2,
            self.fourier_sup,
            self.xnorm,
        ]
        .iter()
        .map(|v| format_float(*v))
        .collect::<Vec<_>>()
        .join(",")
    }

    /// The bracket of the a priori norm at this single time.
    pub fn bracket(&self, p0: f64) -> f64 {
        let g = 1.0 + self.t;
        g.powf(-p0) * (self.sobolev_hn + self.weight1_h2)
            + g.powf(-2.0 * p0) * self.weight2_h2
            + self.fourier_sup
    }

    /// Multiply all norms by `c >= 0`: the quadratic part of energy by `c^2`
    /// is not meaningful here, so energy is left untouched.
    pub fn scaled(&self, c: f64) -> Self {
        Self {
            mass: self.mass * c,
            linf_u: self.linf_u * c,
            sobolev_hn: self.sobolev_hn * c,
            weight1_h2: self.weight1_h2 * c,
            weight2_h2: self.weight2_h2 * c,
            fourier_sup: self.fourier_sup * c,
            xnorm: self.xnorm * c,
            ..*self
        }
    }
}

/// 17 significant digits, round-trippable.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_records_csv<W: Write>(mut out: W, records: &[DiagnosticsRecord]) -> Result<()> {
    writeln!(out, "{}", DiagnosticsRecord::CSV_HEADER)?;
    for r in records {
        writeln!(out, "{}", r.csv_row())?;
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiagnosticsConfig {
    pub sobolev_order: f64,
    pub weight_w: f64,
    pub p0: f64,
}

impl Default for DiagnosticsConfig {
    fn default() -> Self {
        Self {
            sobolev_order: DEFAULT_SOBOLEV_ORDER,
            weight_w: DEFAULT_WEIGHT,
            p0: DEFAULT_P0,
        }
    }
}

/// Full record for the profile `f_hat(t)` of a run governed by `system`.
pub fn compute_record(
    system: &HartreeSystem,
    t: f64,
    fhat: &SpectralField,
    config: &DiagnosticsConfig,
) -> Result<DiagnosticsRecord> {
    fhat.expect_space(Space::Fourier)?;
    let u = system.physical_solution(fhat, t)?;
    let f = inverse_transform(fhat)?;
    let (weight1_h2, weight2_h2) = weighted_profile_norms(&f)?;
    let mut record = DiagnosticsRecord {
        t,
        mass: mass(fhat),
        energy: energy_with(system, &u)?,
        linf_u: u.max_abs(),
        sobolev_hn: sobolev_norm(fhat, config.sobolev_order)?,
        weight1_h2,
        weight2_h2,
        fourier_sup: fourier_weighted_sup(fhat, config.weight_w)?,
        xnorm: 0.0,
    };
    record.xnorm = record.bracket(config.p0);
    let nonneg = [
        record.mass,
        record.linf_u,
        record.sobolev_hn,
        record.weight1_h2,
        record.weight2_h2,
        record.fourier_sup,
    ];
    if !record.energy.is_finite() || nonneg.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
        return Err(Error::InvariantViolation(format!(
            "non-finite or negative diagnostic at t = {t}"
        )));
    }
    Ok(record)
}

/// `sup_t [(1+t)^-p0 (||u||_{H^N} + ||<x>f||_{H^2}) + (1+t)^-2p0 ||<x>^2 f||_{H^2}
/// + ||(1+|xi|)^w f_hat||_inf]` over the records.
pub fn xt_norm(records: &[DiagnosticsRecord], p0: f64) -> Result<f64> {
    if records.is_empty() {
        return Err(Error::InsufficientData("xt_norm of an empty record list".into()));
    }
    Ok(records.iter().map(|r| r.bracket(p0)).fold(f64::NEG_INFINITY, f64::max))
}

/// Least-squares line through `(ln t, ln value)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FitResult {
    pub exponent: f64,
    pub intercept: f64,
    /// Root-mean-square residual of the log-log fit.
    pub residual: f64,
    pub r_squared: f64,
    pub points: usize,
}

/// Minimum number of points `decay_rate_fit` accepts.
pub const MIN_FIT_POINTS: usize = 5;

pub fn decay_rate_fit(series: &[(f64, f64)], window: (f64, f64)) -> Result<FitResult> {
    let inside: Vec<(f64, f64)> = series
        .iter()
        .copied()
        .filter(|(t, _)| *t >= window.0 && *t <= window.1)
        .collect();
    if inside.len() < MIN_FIT_POINTS {
        return Err(Error::InsufficientData(format!(
            "{} points in window [{}, {}], need {MIN_FIT_POINTS}",
            inside.len(),
            window.0,
            window.1
        )));
    }
    loglog_fit(&inside, 2)
}

/// Log-log fit with an explicit minimum point count.
pub(crate) fn loglog_fit(series: &[(f64, f64)], min_points: usize) -> Result<FitResult> {
    if series.len() < min_points.max(2) {
        return Err(Error::InsufficientData(format!(
            "{} points, need {}",
            series.len(),
            min_points.max(2)
        )));
    }
    let mut pts = Vec::with_capacity(series.len());
    for &(t, v) in series {
        if !(t > 0.0) {
            return Err(Error::NonPositive { t, value: t });
        }
        if !(v > 0.0) {
            return Err(Error::NonPositive { t, value: v });
        }
        pts.push((t.ln(), v.ln()));
    }
    let line = linear_fit(&pts)?;
    Ok(FitResult {
        exponent: line.slope,
        intercept: line.intercept,
        residual: line.rms,
        r_squared: line.r_squared,
        points: pts.len(),
    })
}

pub(crate) struct Line {
    pub slope: f64,
    pub intercept: f64,
    pub rms: f64,
    pub r_squared: f64,
}

/// Ordinary least squares `y = slope x + intercept`.
pub(crate) fn linear_fit(pts: &[(f64, f64)]) -> Result<Line> {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = pts.iter().map(|p| (p.1 - my).powi(2)).sum();
    if !(sxx > 0.0) {
        return Err(Error::Degenerate("fit abscissae are all equal".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = pts
        .iter()
        .map(|p| (p.1 - slope * p.0 - intercept).powi(2))
        .sum();
    // a constant series is fitted perfectly
    let r_squared = if syy > 0.0 { 1.0 - rss / syy } else { 1.0 };
    Ok(Line {
        slope,
        intercept,
        rms: (rss / n).sqrt(),
        r_squared,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::GaussLegendre;
    use crate::spectral::{linear_propagator_apply, Grid, GridSpec};
    use num_complex::Complex64;
    use proptest::prelude::*;
    use statrs::function::gamma::gamma;
    use std::f64::consts::PI;
    use std::sync::Arc;

    fn radial() -> Arc<Grid> {
        Grid::new(GridSpec::radial(2048, 40.0)).unwrap()
    }

    #[test]
    fn zero_field() {
        let g = radial();
        let z = SpectralField::zeros(Arc::clone(&g), Space::Physical);
        assert_eq!(mass(&z), 0.0);
        assert_eq!(energy(&z, 1.0, -1.0).unwrap(), 0.0);
        assert_eq!(weighted_profile_norms(&z).unwrap(), (0.0, 0.0));
        let zh = SpectralField::zeros(g, Space::Fourier);
        assert_eq!(fourier_weighted_sup(&zh, 10.0).unwrap(), 0.0);
    }

    #[test]
    fn gaussian_mass_closed_form() {
        let g = radial();
        let u = SpectralField::gaussian(g, 0.3, 1.2);
        let exact = (0.09 * PI.powf(1.5) * 1.2f64.powi(3)).sqrt();
        assert!((mass(&u) - exact).abs() < 1e-12 * exact);
    }

    #[test]
    fn single_mode_energy() {
        let g = Grid::new(GridSpec::periodic(16, 2.0 * PI)).unwrap();
        let mut uh = SpectralField::zeros(Arc::clone(&g), Space::Fourier);
        let idx = g.lattice_to_index([2, -1, 3]);
        let a = Complex64::new(0.7, -0.2);
        uh.data_mut()[idx] = a;
        let u = inverse_transform(&uh).unwrap();
        // mass^2 = L^-3 |a|^2, kinetic = 1/2 Lambda(xi0) mass^2
        let m2 = a.norm_sqr() / (2.0 * PI).powi(3);
        assert!((mass(&u).powi(2) - m2).abs() < 1e-14);
        let e = energy(&u, 1.0, 0.0).unwrap();
        let lam = (1.0f64 + 4.0 + 1.0 + 9.0).sqrt();
        assert!((e - 0.5 * lam * m2).abs() < 1e-14);
    }

    #[test]
    fn focusing_energy_below_free() {
        let g = radial();
        let u = SpectralField::gaussian(g, 0.5, 1.0);
        let free = energy(&u, 1.0, 0.0).unwrap();
        let foc = energy(&u, 1.0, -1.0).unwrap();
        assert!(foc < free);
        let def = energy(&u, 1.0, 1.0).unwrap();
        assert!((def - free - (free - foc)).abs() < 1e-12 * free);
    }

    #[test]
    fn coulomb_energy_of_gaussian() {
        // int int |x-y|^-1 e^{-x^2} e^{-y^2} = sqrt(2) pi^{5/2}; the radial
        // Newton sums are second order in h
        let exact = 2f64.sqrt() * PI.powf(2.5);
        let err = |n: usize| {
            let g = Grid::new(GridSpec::radial(n, 30.0)).unwrap();
            let u = SpectralField::gaussian(Arc::clone(&g), 1.0, 1.0);
            let free = energy(&u, 1.0, 0.0).unwrap();
            (4.0 * (energy(&u, 1.0, 1.0).unwrap() - free) - exact).abs() / exact
        };
        let (coarse, fine) = (err(1024), err(4096));
        assert!(fine < 1e-5, "{fine}");
        let order = (coarse / fine).log2() / 2.0;
        assert!((order - 2.0).abs() < 0.1, "{order}");
    }

    /// `int_0^inf k^{2j} e^{-k^2} dk`.
    fn moment(j: i32) -> f64 {
        gamma(j as f64 + 0.5) / 2.0
    }

    #[test]
    fn weighted_norms_of_gaussian() {
        let g = Grid::new(GridSpec::radial(4096, 40.0)).unwrap();
        let f = SpectralField::gaussian(Arc::clone(&g), 1.0, 1.0);
        let (w1, w2) = weighted_profile_norms(&f).unwrap();

        // F[(1+r^2) e^{-r^2/2}] = (2 pi)^{3/2} (4 - k^2) e^{-k^2/2}, so
        // ||<x>^2 f||_{H^2}^2 = 4 pi int k^2 (1+k^2)^2 (4-k^2)^2 e^{-k^2} dk
        let poly = [16.0, 24.0, 1.0, -6.0, 1.0];
        let w2_exact: f64 = (4.0 * PI
            * poly
                .iter()
                .enumerate()
                .map(|(j, c)| c * moment(j as i32 + 1))
                .sum::<f64>())
        .sqrt();
        assert!((w2 - w2_exact).abs() < 1e-6 * w2_exact, "{w2} vs {w2_exact}");

        // ||<x> f||_{H^2} = ||(1 - Laplacian)(<x> f)||_{L^2} from exact derivatives
        let h = |r: f64| {
            let s = (1.0 + r * r).sqrt();
            let e = (-r * r / 2.0).exp();
            let (s1, s2) = (r / s, 1.0 / s.powi(3));
            let (g1, g2) = (-r * e, (r * r - 1.0) * e);
            let val = s * e;
            let d1 = s1 * e + s * g1;
            let d2 = s2 * e + 2.0 * s1 * g1 + s * g2;
            let lap = d2 + 2.0 * d1 / r;
            val - lap
        };
        let gl = GaussLegendre::new(40);
        let w1_exact = (4.0 * PI * gl.integrate_composite(0.0, 20.0, 40, |r| r * r * h(r).powi(2))).sqrt();
        assert!((w1 - w1_exact).abs() < 1e-6 * w1_exact, "{w1} vs {w1_exact}");
    }

    #[test]
    fn translation_grows_weight_only() {
        let g = Grid::new(GridSpec::periodic(32, 16.0)).unwrap();
        let make = |shift: f64| {
            SpectralField::from_fn(Arc::clone(&g), |p| {
                let d = (p[0] - shift).powi(2) + p[1] * p[1] + p[2] * p[2];
                Complex64::new((-d).exp(), 0.0)
            })
        };
        // shift by whole grid cells so the lattice translate is exact
        let h = g.spacing();
        let (a, b) = (make(0.0), make(4.0 * h));
        let (_, w2a) = weighted_profile_norms(&a).unwrap();
        let (_, w2b) = weighted_profile_norms(&b).unwrap();
        assert!(w2b > w2a);
        let (sa, sb) = (sobolev_norm(&a, 2.0).unwrap(), sobolev_norm(&b, 2.0).unwrap());
        assert!((sa - sb).abs() < 1e-12 * sa);
    }

    #[test]
    fn weighted_sup_single_mode_and_free_flow() {
        let g = Grid::new(GridSpec::periodic(16, 8.0)).unwrap();
        let mut f = SpectralField::zeros(Arc::clone(&g), Space::Fourier);
        let idx = g.lattice_to_index([1, 2, 0]);
        f.data_mut()[idx] = Complex64::new(0.0, 0.25);
        let k = g.mode_norms()[idx];
        let v = fourier_weighted_sup(&f, 10.0).unwrap();
        assert!((v - (1.0 + k).powi(10) * 0.25).abs() < 1e-12 * v);

        let rg = radial();
        let gh = forward_transform(&SpectralField::gaussian(Arc::clone(&rg), 1.0, 1.0)).unwrap();
        let before = fourier_weighted_sup(&gh, 4.0).unwrap();
        let after = fourier_weighted_sup(&linear_propagator_apply(&gh, 17.0).unwrap(), 4.0).unwrap();
        assert!((before - after).abs() < 1e-13 * before);
    }

    fn record(t: f64, base: f64) -> DiagnosticsRecord {
        DiagnosticsRecord {
            t,
            mass: base,
            energy: base,
            linf_u: base,
            sobolev_hn: base,
            weight1_h2: 2.0 * base,
            weight2_h2: 3.0 * base,
            fourier_sup: 4.0 * base,
            xnorm: 0.0,
        }
    }

    #[test]
    fn xt_norm_properties() {
        assert!(xt_norm(&[], DEFAULT_P0).is_err());
        let r0 = record(0.0, 1.0);
        assert_eq!(xt_norm(&[r0], DEFAULT_P0).unwrap(), 10.0);
        let mut recs = vec![r0, record(5.0, 1.1), record(9.0, 0.7)];
        let base = xt_norm(&recs, DEFAULT_P0).unwrap();
        let scaled: Vec<_> = recs.iter().map(|r| r.scaled(3.0)).collect();
        assert!((xt_norm(&scaled, DEFAULT_P0).unwrap() - 3.0 * base).abs() < 1e-12 * base);
        recs.push(record(20.0, 0.1));
        assert!(xt_norm(&recs, DEFAULT_P0).unwrap() >= base);
        let p0_free = xt_norm(&recs, 0.0).unwrap();
        assert!(p0_free >= xt_norm(&recs, DEFAULT_P0).unwrap());
    }

    #[test]
    fn csv_round_trips_full_precision() {
        let r = DiagnosticsRecord { xnorm: 1.0 / 3.0, ..record(0.1, PI) };
        let mut buf = Vec::new();
        write_records_csv(&mut buf, &[r]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), DiagnosticsRecord::CSV_HEADER);
        let vals: Vec<f64> = lines.next().unwrap().split(',').map(|s| s.parse().unwrap()).collect();
        assert_eq!(vals[0], 0.1);
        assert_eq!(vals[1], PI);
        assert_eq!(vals[8], 1.0 / 3.0);
    }

    #[test]
    fn fit_examples() {
        let pow: Vec<(f64, f64)> = (1..=20).map(|i| (i as f64, 3.0 * (i as f64).powf(-1.5))).collect();
        let fit = decay_rate_fit(&pow, (1.0, 20.0)).unwrap();
        assert!((fit.exponent + 1.5).abs() < 1e-10);
        assert!((fit.intercept - 3f64.ln()).abs() < 1e-10);
        let flat: Vec<(f64, f64)> = (1..=8).map(|i| (i as f64, 2.0)).collect();
        assert!(decay_rate_fit(&flat, (0.0, 100.0)).unwrap().exponent.abs() < 1e-14);
        let wobble: Vec<(f64, f64)> = (0..200)
            .map(|i| {
                let t = 1000f64.powf(i as f64 / 199.0);
                (t, t.powf(-1.5) * (1.0 + 0.1 * t.ln().sin()))
            })
            .collect();
        let fit = decay_rate_fit(&wobble, (1.0, 1000.0)).unwrap();
        assert!((fit.exponent + 1.5).abs() <= 0.05, "{}", fit.exponent);
    }

    #[test]
    fn fit_errors() {
        let few: Vec<(f64, f64)> = (1..=4).map(|i| (i as f64, 1.0)).collect();
        assert!(matches!(decay_rate_fit(&few, (0.0, 10.0)), Err(Error::InsufficientData(_))));
        let mut bad: Vec<(f64, f64)> = (1..=6).map(|i| (i as f64, 1.0)).collect();
        bad[2].1 = 0.0;
        assert!(matches!(decay_rate_fit(&bad, (0.0, 10.0)), Err(Error::NonPositive { .. })));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn norms_are_absolutely_homogeneous(c in 0.01f64..50.0, phase in 0.0f64..std::f64::consts::TAU) {
            let g = Grid::new(GridSpec::radial(256, 30.0)).unwrap();
            let u = SpectralField::gaussian(Arc::clone(&g), 0.4, 1.3);
            let cu = u.scale(Complex64::from_polar(c, phase));
            let close = |a: f64, b: f64| (a - b).abs() <= 1e-12 * b.abs().max(1e-300);
            prop_assert!(close(mass(&cu), c * mass(&u)));
            prop_assert!(close(sobolev_norm(&cu, 8.0).unwrap(), c * sobolev_norm(&u, 8.0).unwrap()));
            let (a1, a2) = weighted_profile_norms(&u).unwrap();
            let (b1, b2) = weighted_profile_norms(&cu).unwrap();
            prop_assert!(close(b1, c * a1) && close(b2, c * a2));
            let uh = forward_transform(&u).unwrap();
            let cuh = forward_transform(&cu).unwrap();
            prop_assert!(close(fourier_weighted_sup(&cuh, 10.0).unwrap(),
                c * fourier_weighted_sup(&uh, 10.0).unwrap()));
        }
    }
}
