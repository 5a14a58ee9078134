use thiserror::Error;

/// Errors produced by grids, reconstructions, the time stepper and the oracles.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CwenoError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("cell width must be positive, got {0}")]
    NonPositiveWidth(f64),

    #[error("ghost width {width} exceeds the {n} cells available on this axis")]
    GhostTooWide { width: usize, n: usize },

    #[error("ghost width must be at least 1")]
    ZeroGhostWidth,

    #[error("field shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("non-finite value in cell {cell}, component {component}")]
    NonFinite { cell: usize, component: usize },

    #[error("inadmissible state in cell {cell}: {quantity} = {value}")]
    Inadmissible {
        cell: usize,
        quantity: &'static str,
        value: f64,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unknown problem `{name}`; valid names: {}", valid.join(", "))]
    UnknownProblem { name: String, valid: Vec<&'static str> },

    #[error("time {t} is outside the validity window (t < {limit})")]
    OutsideValidity { t: f64, limit: f64 },

    #[error("root finding did not converge: {0}")]
    NoConvergence(String),

    #[error("the Riemann data generate vacuum")]
    Vacuum,
}

pub type Result<T> = std::result::Result<T, CwenoError>;
