use crate::spectral::{GridKind, Space};

/// Errors raised by the solver, diagnostics and oracles.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("expected a field in {expected:?} space, found {found:?}")]
    WrongSpace { expected: Space, found: Space },

    #[error("fields live on different grids")]
    GridMismatch,

    #[error("data length {found} does not match grid ({expected})")]
    LengthMismatch { expected: usize, found: usize },

    #[error("`{name}` = {value} violates {constraint}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        constraint: &'static str,
    },

    #[error("operation `{op}` is not available on {kind:?} grids")]
    UnsupportedGrid { op: &'static str, kind: GridKind },

    #[error("run diverged at t = {t}: {reason}")]
    Diverged { t: f64, reason: String },

    #[error("domain too small: r_max = {actual} but the propagation rule needs at least {required}")]
    DomainTooSmall { required: f64, actual: f64 },

    #[error("oracle input too large: n = {n} exceeds the limit {limit}")]
    GridTooLarge { n: usize, limit: usize },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("series value {value} at t = {t} is not positive")]
    NonPositive { t: f64, value: f64 },

    #[error("samples out of order: t = {t} follows t = {previous}")]
    OutOfOrder { previous: f64, t: f64 },

    #[error("phase increment {increment} rad between t = {t1} and t = {t2} is ambiguous; sample more densely")]
    SamplingTooCoarse { t1: f64, t2: f64, increment: f64 },

    #[error("no stationary point: |x| = {x_norm} >= t = {t}")]
    NoStationaryPoint { x_norm: f64, t: f64 },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("snapshot format: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
