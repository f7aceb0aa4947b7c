//! Smooth cutoff family and Littlewood-Paley projections.
//!
//! `phi` equals 1 on `[-5/4, 5/4]`, vanishes outside `[-8/5, 8/5]`, and on the
//! transition interval it is the normalized tail integral of the bump
//! `psi(s) = exp(-1 / ((s - 5/4)(8/5 - s)))`, so it is C-infinity.
//! Every member depends on `x` only through `|x|`, so the functions below
//! take the radius.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::quadrature::GaussLegendre;
use crate::spectral::{Space, SpectralField};

pub const INNER: f64 = 1.25;
pub const OUTER: f64 = 1.6;
const TABLE_INTERVALS: usize = 16384;

fn bump(s: f64) -> f64 {
    if s <= INNER || s >= OUTER {
        0.0
    } else {
        (-1.0 / ((s - INNER) * (OUTER - s))).exp()
    }
}

struct TailTable {
    step: f64,
    /// `tail[i] = int_{x_i}^{OUTER} psi`, `x_i = INNER + i * step`.
    tail: Vec<f64>,
    total: f64,
    rule: GaussLegendre,
}

fn table() -> &'static TailTable {
    static TABLE: OnceLock<TailTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        let rule = GaussLegendre::new(10);
        let step = (OUTER - INNER) / TABLE_INTERVALS as f64;
        let mut tail = vec![0.0; TABLE_INTERVALS + 1];
        for i in (0..TABLE_INTERVALS).rev() {
            let lo = INNER + i as f64 * step;
            tail[i] = tail[i + 1] + rule.integrate(lo, lo + step, bump);
        }
        let total = tail[0];
        TailTable {
            step,
            tail,
            total,
            rule,
        }
    })
}

/// The base cutoff `phi(s)`, evaluated to full double precision.
pub fn base_cutoff(s: f64) -> f64 {
    let a = s.abs();
    if a <= INNER {
        return 1.0;
    }
    if a >= OUTER {
        return 0.0;
    }
    let tab = table();
    let i = (((a - INNER) / tab.step) as usize).min(TABLE_INTERVALS - 1);
    let hi = INNER + (i + 1) as f64 * tab.step;
    let partial = tab.rule.integrate(a, hi, bump);
    ((tab.tail[i + 1] + partial) / tab.total).clamp(0.0, 1.0)
}

/// Cubic Hermite interpolant of `phi` on the 16384-interval table, using the
/// exact derivative `phi' = -psi / int psi`. Interpolation error is below
/// 1e-10 (checked in tests).
#[derive(Clone, Copy, Debug, Default)]
pub struct CutoffTable;

impl CutoffTable {
    pub fn eval(&self, s: f64) -> f64 {
        let a = s.abs();
        if a <= INNER {
            return 1.0;
        }
        if a >= OUTER {
            return 0.0;
        }
        let tab = table();
        let x = (a - INNER) / tab.step;
        let i = (x as usize).min(TABLE_INTERVALS - 1);
        let t = x - i as f64;
        let x0 = INNER + i as f64 * tab.step;
        let (p0, p1) = (tab.tail[i] / tab.total, tab.tail[i + 1] / tab.total);
        let d0 = -bump(x0) / tab.total * tab.step;
        let d1 = -bump(x0 + tab.step) / tab.total * tab.step;
        let t2 = t * t;
        let t3 = t2 * t;
        let v = (2.0 * t3 - 3.0 * t2 + 1.0) * p0
            + (t3 - 2.0 * t2 + t) * d0
            + (-2.0 * t3 + 3.0 * t2) * p1
            + (t3 - t2) * d1;
        v.clamp(0.0, 1.0)
    }
}

/// `phi(r / 2^k)` without the sign check on the exponent.
fn scaled(r: f64, k: i32) -> f64 {
    base_cutoff(r * 2f64.powi(-k))
}

/// `phi_k(x) = phi(|x|/2^k) - phi(|x|/2^{k-1})`.
pub fn phi_k(r: f64, k: i32) -> f64 {
    (scaled(r, k) - scaled(r, k - 1)).max(0.0)
}

/// `phi_I = sum over integer k in [lo, hi] of phi_k`, which telescopes.
pub fn phi_interval(r: f64, lo: i32, hi: i32) -> f64 {
    if hi < lo {
        return 0.0;
    }
    (scaled(r, hi) - scaled(r, lo - 1)).max(0.0)
}

/// `phi_k^{(m)}`: `phi_k` for `k > m`, `phi(|x|/2^m)` for `k = m`.
pub fn phi_k_floor(r: f64, k: i32, m: i32) -> Result<f64> {
    if m > k {
        return Err(Error::InvalidParameter {
            name: "m",
            value: m as f64,
            constraint: "m <= k",
        });
    }
    Ok(if k == m { scaled(r, m) } else { phi_k(r, k) })
}

/// Littlewood-Paley projection `P_k`: multiply each mode by `phi_k(|xi|)`.
pub fn project_band(field: &SpectralField, k: i32) -> Result<SpectralField> {
    field.expect_space(Space::Fourier)?;
    let data = field
        .data()
        .iter()
        .zip(field.grid().mode_norms())
        .map(|(v, &r)| v * phi_k(r, k))
        .collect();
    SpectralField::new(std::sync::Arc::clone(field.grid()), data, Space::Fourier)
}
