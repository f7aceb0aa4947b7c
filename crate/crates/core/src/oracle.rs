//! Slow reference implementations used to certify the fast paths on small
//! inputs. Nothing here is optimized; hard size guards keep them cheap.

use std::f64::consts::PI;

use num_complex::Complex64;
use statrs::function::gamma::gamma;

use crate::dyadic::base_cutoff;
use crate::error::{Error, Result};
use crate::quadrature::{adaptive, GaussLegendre};
use crate::spectral::{GridKind, Space, SpectralField};

/// Largest per-axis size accepted by `direct_convolution`.
pub const CONVOLUTION_LIMIT: usize = 24;
/// Largest per-axis size accepted by `direct_duhamel`.
pub const DUHAMEL_LIMIT: usize = 8;

fn guard(field: &SpectralField, limit: usize, op: &'static str) -> Result<()> {
    let grid = field.grid();
    if grid.kind() != GridKind::Periodic3D {
        return Err(Error::UnsupportedGrid { op, kind: grid.kind() });
    }
    if grid.n() > limit {
        return Err(Error::GridTooLarge { n: grid.n(), limit });
    }
    Ok(())
}

/// `c(gamma)` recomputed from the Gamma function.
fn kernel_constant(gamma_exp: f64) -> f64 {
    2f64.powf(3.0 - gamma_exp) * PI.powf(1.5) * gamma((3.0 - gamma_exp) / 2.0) / gamma(gamma_exp / 2.0)
}

fn kernel_hat(k: [f64; 3], gamma_exp: f64) -> f64 {
    let norm = (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]).sqrt();
    if norm == 0.0 {
        0.0
    } else {
        kernel_constant(gamma_exp) * norm.powf(gamma_exp - 3.0)
    }
}

fn check_gamma(gamma_exp: f64) -> Result<()> {
    if gamma_exp > 0.0 && gamma_exp < 3.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "gamma",
            value: gamma_exp,
            constraint: "0 < gamma < 3",
        })
    }
}

/// Periodic lattice sum `h^3 sum_y K(x - y) rho(y)`, with `K` tabulated from
/// its Fourier series `L^-3 sum_k K_hat(k) e^{ik.d}` (zero mode omitted).
pub fn direct_convolution(density: &SpectralField, gamma_exp: f64) -> Result<SpectralField> {
    guard(density, CONVOLUTION_LIMIT, "direct_convolution")?;
    density.expect_space(Space::Physical)?;
    check_gamma(gamma_exp)?;
    let grid = density.grid();
    let n = grid.n();
    let h = grid.spacing();
    let dk = 2.0 * PI / grid.extent();
    let signed = |i: usize| if i < n / 2 { i as f64 } else { i as f64 - n as f64 };
    let len = n * n * n;
    let idx3 = |i: usize| [i / (n * n), (i / n) % n, i % n];

    // kernel at every lattice offset d
    let mut kernel = vec![0.0; len];
    let mut hats = Vec::with_capacity(len);
    for m in 0..len {
        let [a, b, c] = idx3(m);
        let k = [signed(a) * dk, signed(b) * dk, signed(c) * dk];
        hats.push((k, kernel_hat(k, gamma_exp)));
    }
    for (d, value) in kernel.iter_mut().enumerate() {
        let [a, b, c] = idx3(d);
        let x = [a as f64 * h, b as f64 * h, c as f64 * h];
        let sum: f64 = hats
            .iter()
            .map(|(k, kh)| kh * (k[0] * x[0] + k[1] * x[1] + k[2] * x[2]).cos())
            .sum();
        *value = sum / grid.extent().powi(3);
    }

    let rho = density.data();
    let mut out = vec![Complex64::new(0.0, 0.0); len];
    for (i, o) in out.iter_mut().enumerate() {
        let [a, b, c] = idx3(i);
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, r) in rho.iter().enumerate() {
            let [p, q, s] = idx3(j);
            let d = (((a + n - p) % n) * n + (b + n - q) % n) * n + (c + n - s) % n;
            acc += r * kernel[d];
        }
        *o = acc * h.powi(3);
    }
    SpectralField::new(grid.clone(), out, Space::Physical)
}

/// `d/ds f_hat(s, xi)` by the direct double sum
/// `-i lambda L^-6 sum_{eta != 0} sum_sigma e^{is phi} K_hat(eta)
///  f_hat(xi-eta) f_hat(eta+sigma) conj f_hat(sigma)`, with
/// `phi = Lambda(xi) - Lambda(xi-eta) - Lambda(eta+sigma) + Lambda(sigma)`
/// and lattice indices taken mod n.
pub fn direct_duhamel(
    fhat: &SpectralField,
    s: f64,
    xi: usize,
    gamma_exp: f64,
    lambda: f64,
) -> Result<Complex64> {
    guard(fhat, DUHAMEL_LIMIT, "direct_duhamel")?;
    fhat.expect_space(Space::Fourier)?;
    check_gamma(gamma_exp)?;
    let grid = fhat.grid();
    let n = grid.n() as i64;
    let len = grid.len();
    let dk = 2.0 * PI / grid.extent();
    let lattice = |i: usize| {
        let n = n as usize;
        let w = |v: usize| if v < n / 2 { v as i64 } else { v as i64 - n as i64 };
        [w(i / (n * n)), w((i / n) % n), w(i % n)]
    };
    let index = |k: [i64; 3]| {
        let w = |v: i64| v.rem_euclid(n) as usize;
        (w(k[0]) * n as usize + w(k[1])) * n as usize + w(k[2])
    };
    let big_lambda = |i: usize| {
        let k = lattice(i);
        let k2 = (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]) as f64 * dk * dk;
        (1.0 + k2).sqrt()
    };
    let f = fhat.data();
    let kx = lattice(xi);
    let mut total = Complex64::new(0.0, 0.0);
    for eta in 0..len {
        let ke = lattice(eta);
        let kh = kernel_hat([ke[0] as f64 * dk, ke[1] as f64 * dk, ke[2] as f64 * dk], gamma_exp);
        if kh == 0.0 {
            continue;
        }
        let xe = index([kx[0] - ke[0], kx[1] - ke[1], kx[2] - ke[2]]);
        let mut inner = Complex64::new(0.0, 0.0);
        for sigma in 0..len {
            let ks = lattice(sigma);
            let es = index([ke[0] + ks[0], ke[1] + ks[1], ke[2] + ks[2]]);
            let phase = big_lambda(xi) - big_lambda(xe) - big_lambda(es) + big_lambda(sigma);
            inner += Complex64::from_polar(1.0, s * phase) * f[xe] * f[es] * f[sigma].conj();
        }
        total += inner * kh;
    }
    Ok(Complex64::new(0.0, -lambda) * total / grid.extent().powi(6))
}

/// Closed form of `(1/4pi) int_{S^2} |a - b w|^-1 dS(w)`.
pub fn spherical_average_exact(a: [f64; 3], b: f64) -> f64 {
    let na = (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt();
    1.0 / na.max(b)
}

/// `(1/4pi) int_{S^2} |a - b w|^-1 dS(w)` by product quadrature: Gauss-Legendre
/// on geometrically graded polar panels (the near-singular direction is the
/// pole of a frame aligned with `a`) times the trapezoid rule in azimuth.
pub fn spherical_average(a: [f64; 3], b: f64) -> Result<f64> {
    spherical_average_rule(a, b, 16)
}

/// As `spherical_average` with `order` Gauss points per polar panel.
pub fn spherical_average_rule(a: [f64; 3], b: f64, order: usize) -> Result<f64> {
    let na = (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt();
    if !(b >= 0.0) || !b.is_finite() || !na.is_finite() {
        return Err(Error::Degenerate(format!("invalid radius b = {b}")));
    }
    if na == 0.0 && b == 0.0 {
        return Err(Error::Degenerate("|a| = b = 0".into()));
    }
    // orthonormal frame (e1, e2, e3) with e3 along a
    let e3 = if na > 0.0 { [a[0] / na, a[1] / na, a[2] / na] } else { [0.0, 0.0, 1.0] };
    let helper = if e3[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    let dot = helper[0] * e3[0] + helper[1] * e3[1] + helper[2] * e3[2];
    let mut e1 = [helper[0] - dot * e3[0], helper[1] - dot * e3[1], helper[2] - dot * e3[2]];
    let n1 = (e1[0] * e1[0] + e1[1] * e1[1] + e1[2] * e1[2]).sqrt();
    e1 = [e1[0] / n1, e1[1] / n1, e1[2] / n1];
    let e2 = [
        e3[1] * e1[2] - e3[2] * e1[1],
        e3[2] * e1[0] - e3[0] * e1[2],
        e3[0] * e1[1] - e3[1] * e1[0],
    ];

    let rule = GaussLegendre::new(order);
    let panels = 40;
    let mut edges = vec![0.0];
    for k in (0..panels).rev() {
        edges.push(PI * 0.5f64.powi(k));
    }
    let azimuth = 2 * order;
    let mut total = 0.0;
    for w in edges.windows(2) {
        for (theta, wt) in rule.mapped(w[0], w[1]) {
            let (st, ct) = theta.sin_cos();
            let mut ring = 0.0;
            for j in 0..azimuth {
                let phi = 2.0 * PI * (j as f64 + 0.5) / azimuth as f64;
                let (sp, cp) = phi.sin_cos();
                let omega = [
                    st * cp * e1[0] + st * sp * e2[0] + ct * e3[0],
                    st * cp * e1[1] + st * sp * e2[1] + ct * e3[1],
                    st * cp * e1[2] + st * sp * e2[2] + ct * e3[2],
                ];
                let d = [a[0] - b * omega[0], a[1] - b * omega[1], a[2] - b * omega[2]];
                ring += 1.0 / (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt();
            }
            total += wt * st * ring * 2.0 * PI / azimuth as f64;
        }
    }
    Ok(total / (4.0 * PI))
}

/// Settings for `leading_term_check`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LeadingTermParams {
    pub s: f64,
    /// `|xi|` of the probed frequency.
    pub xi_norm: f64,
    /// `log2` of the interaction cutoff: `|eta|` is restricted by `phi(|eta| / 2^l0)`.
    pub l0_scale: f64,
    pub gamma: f64,
    pub lambda: f64,
    /// Cutoff exponent defining the regime `|xi| <= (5/4) s^alpha`.
    pub alpha: f64,
    /// Radius beyond which the profile is treated as zero.
    pub support: f64,
}

impl Default for LeadingTermParams {
    fn default() -> Self {
        Self {
            s: 8.0,
            xi_norm: 0.5,
            l0_scale: -1.0,
            gamma: 1.0,
            lambda: -1.0,
            alpha: 1.0 / 300.0,
            support: 8.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LeadingTerm {
    /// Interaction integral with `|eta|` restricted by the cutoff.
    pub restricted: Complex64,
    /// `-i lambda c0 int |z|^-1 |F|^2 dsigma * F(|xi|) / (s + 1)`.
    pub asymptotic: Complex64,
    pub difference: f64,
    /// `restricted / asymptotic`; `None` when the asymptotic term vanishes.
    pub ratio: Option<Complex64>,
    /// False when `|xi|` lies outside the critical regime.
    pub regime_ok: bool,
}

fn lam(r: f64) -> f64 {
    (1.0 + r * r).sqrt()
}

/// Composite Gauss-Legendre nodes on `[0, end]`, graded geometrically
/// toward 0 down to `finest`.
fn graded_nodes(end: f64, finest: f64, rule: &GaussLegendre) -> Vec<(f64, f64)> {
    let mut edges = vec![0.0];
    let mut x = finest.min(end);
    while x < end {
        edges.push(x);
        x *= 2.0;
    }
    edges.push(end);
    edges
        .windows(2)
        .flat_map(|w| rule.mapped(w[0], w[1]).collect::<Vec<_>>())
        .collect()
}

/// Interaction integral of the profile equation for a frozen radial profile
/// `F(|sigma|)`, restricted to `|eta| <~ 2^l0`, against its leading
/// asymptotic term. Both are evaluated by continuum quadrature.
pub fn leading_term_check(
    profile: &dyn Fn(f64) -> Complex64,
    params: &LeadingTermParams,
) -> Result<LeadingTerm> {
    check_gamma(params.gamma)?;
    let s = params.s;
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::InvalidParameter {
            name: "s",
            value: s,
            constraint: "s > 0",
        });
    }
    let xi = params.xi_norm;
    let regime_ok = xi <= 1.25 * s.powf(params.alpha);
    let support = params.support;
    let radius = 2f64.powf(params.l0_scale);
    let c = kernel_constant(params.gamma);

    // sigma integral G(q) = 2 pi int r^2 dr int dmu e^{is(Lambda(r) - Lambda(r'))} F(r') conj F(r),
    // r' = |eta + sigma|
    let gl = GaussLegendre::new(24);
    let r_nodes = gl.composite_nodes(0.0, support, 48);
    let mu_panels = 8 + (s * radius * 1.6 / PI).ceil() as usize;
    let mu_nodes = gl.composite_nodes(-1.0, 1.0, mu_panels);
    let f_r: Vec<Complex64> = r_nodes.iter().map(|&(r, _)| profile(r)).collect();
    let big_g = |q: f64| {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, &(r, wr)) in r_nodes.iter().enumerate() {
            let mut inner = Complex64::new(0.0, 0.0);
            for &(mu, wm) in &mu_nodes {
                let rp = (q * q + r * r + 2.0 * q * r * mu).max(0.0).sqrt();
                if rp > support {
                    continue;
                }
                inner += Complex64::from_polar(wm, s * (lam(r) - lam(rp))) * profile(rp);
            }
            acc += inner * f_r[k].conj() * (wr * r * r);
        }
        acc * (2.0 * PI)
    };

    // outer integral over eta, xi along the pole
    let q_end = 1.6 * radius;
    let q_nodes = graded_nodes(q_end, (0.05 / s).min(q_end / 4.0), &gl);
    let nu_panels = 8 + (s * q_end / PI).ceil() as usize;
    let nu_nodes = gl.composite_nodes(-1.0, 1.0, nu_panels);
    let mut restricted = Complex64::new(0.0, 0.0);
    for &(q, wq) in &q_nodes {
        let cut = base_cutoff(q / radius);
        if cut == 0.0 {
            continue;
        }
        let mut angular = Complex64::new(0.0, 0.0);
        for &(nu, wn) in &nu_nodes {
            let d = (xi * xi + q * q - 2.0 * xi * q * nu).max(0.0).sqrt();
            if d > support {
                continue;
            }
            angular += Complex64::from_polar(wn, s * (lam(xi) - lam(d))) * profile(d);
        }
        // q^2 * c q^(gamma-3)
        let weight = wq * c * q.powf(params.gamma - 1.0) * cut;
        restricted += big_g(q) * angular * weight;
    }
    let pref = Complex64::new(0.0, -params.lambda) * (2.0 * PI) * (2.0 * PI).powi(-6);
    restricted *= pref;

    // c0 int |z|^-1 |F|^2 = c0 4 pi int r^2 |F(r)|^2 / max(a, b(r)) dr
    let a = xi / lam(xi);
    let integrand = |r: f64| r * r * profile(r).norm_sqr() / a.max(r / lam(r));
    let rate = (2.0 * PI).powi(-3)
        * 4.0
        * PI
        * (adaptive(0.0, xi, 1e-13, 1e-300, &integrand) + adaptive(xi, support, 1e-13, 1e-300, &integrand));
    let asymptotic = Complex64::new(0.0, -params.lambda) * rate * profile(xi) / (s + 1.0);
    let ratio = if asymptotic.norm() > 0.0 {
        Some(restricted / asymptotic)
    } else {
        None
    };
    Ok(LeadingTerm {
        restricted,
        asymptotic,
        difference: (restricted - asymptotic).norm(),
        ratio,
        regime_ok,
    })
}
