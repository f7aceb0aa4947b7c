//! Pseudospectral simulation of the semi-relativistic Hartree flow
//! `i u_t - sqrt(1 - Laplacian) u = lambda (|x|^-gamma * |u|^2) u` in three
//! dimensions, with diagnostics for decay and (modified) scattering.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod error;

pub mod dyadic;
pub mod diagnostics;
pub mod dynamics;
pub mod lindecay;
pub mod oracle;
pub mod quadrature;
pub mod scattering;
pub mod spectral;

pub use error::{Error, Result};
pub use spectral::{Grid, GridKind, GridSpec, Space, SpectralField};
pub use dynamics::{evolve, evolve_streaming, EvolutionParams, Observer, TrajectorySample};
pub use diagnostics::DiagnosticsRecord;
pub use scattering::ScatteringState;
