//! Grids, transforms and Fourier multipliers.

mod field;
mod grid;
mod multiplier;
mod newton;
mod snapshot;
mod transform;

pub use field::{Space, SpectralField};
pub use grid::{check_propagation_domain, Grid, GridKind, GridSpec};
pub use multiplier::{
    lambda_multiplier, linear_propagator_apply, riesz_constant, riesz_symbol, Multiplier,
};
pub(crate) use multiplier::check_gamma;
pub use newton::newton_radial_convolution;
pub use snapshot::{read_snapshot, write_real_snapshot, write_snapshot, FORMAT_VERSION, MAGIC};
pub use transform::{forward_transform, inverse_transform};
