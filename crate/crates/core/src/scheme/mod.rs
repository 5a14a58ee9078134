//! Staggered central evolution: NCE predictor, Simpson flux quadrature in
//! time and the one- and two-dimensional steps, plus the fixed-step driver.

pub mod nce;
mod one_d;
mod two_d;

pub use nce::{nce_predict, NceTableau, PredictorState, SIMPSON};
pub use one_d::{central_weights_1d, semidiscrete_rhs_1d, step_1d};
pub use two_d::{central_weights_2d, step_2d};

use crate::cweno1d::{nonlinear_weights, CwenoParams};
use crate::error::{CwenoError, Result};
use crate::mesh::{BoundaryCondition, CellField, Grid};
use crate::models::{global_smoothness_indicators, Law, COURANT_MAX};

/// Largest number of conserved components a law may have.
pub const MAX_COMPONENTS: usize = 8;

/// Weights from raw indicators for scalars, from norm-scaled shared
/// indicators for systems.
#[inline]
pub(crate) fn shared_weights<const N: usize>(
    d: usize,
    norms: Option<&[f64]>,
    params: &CwenoParams,
    ideal: &[f64; N],
    is_of: impl Fn(usize) -> [f64; N],
) -> [f64; N] {
    match norms {
        Some(norms) if d > 1 => {
            let mut per = [[0.0; N]; MAX_COMPONENTS];
            for (r, slot) in per.iter_mut().enumerate().take(d) {
                *slot = is_of(r);
            }
            nonlinear_weights(&global_smoothness_indicators(&per[..d], norms), ideal, params)
        }
        _ => nonlinear_weights(&is_of(0), ideal, params),
    }
}

/// One staggered step for either dimension.
pub fn step(field: &CellField, law: &Law, dt: f64, params: &CwenoParams, bc: BoundaryCondition) -> Result<CellField> {
    match law {
        Law::D1(l) => step_1d(field, l.as_ref(), dt, params, bc),
        Law::D2(l) => step_2d(field, l.as_ref(), dt, params, bc),
    }
}

/// Central-member weight in every cell.
pub fn central_weights(field: &CellField, bc: BoundaryCondition, params: &CwenoParams) -> Result<Vec<f64>> {
    match field.grid() {
        Grid::D1(_) => central_weights_1d(field, bc, params),
        Grid::D2(_) => central_weights_2d(field, bc, params),
    }
}

/// Length `ℓ` that turns a mesh ratio into a step, `Δt = λ ℓ`. In 1D it is
/// the cell width; in 2D the ratio counts both directions,
/// `λ = Δt (1/Δx + 1/Δy)`, so `ℓ = (1/Δx + 1/Δy)⁻¹` (half the width on
/// square cells).
pub fn ratio_length(grid: &Grid) -> f64 {
    match grid {
        Grid::D1(g) => g.h(),
        Grid::D2(g) => 1.0 / (1.0 / g.hx() + 1.0 / g.hy()),
    }
}

/// Courant number of `field` for a step `dt`: `Δt max ρ / Δx` in 1D and
/// `Δt max (ρ_x / Δx + ρ_y / Δy)` in 2D.
pub fn courant_number(field: &CellField, law: &Law, dt: f64) -> f64 {
    let d = field.components();
    let mut c: f64 = 0.0;
    match (law, field.grid()) {
        (Law::D1(l), Grid::D1(g)) => {
            for cell in field.values().chunks(d) {
                c = c.max(l.spectral_radius(cell) / g.h());
            }
        }
        (Law::D2(l), Grid::D2(g)) => {
            for (k, cell) in field.values().chunks(d).enumerate() {
                let (x, y) = (g.x.center((k % g.nx()) as isize), g.y.center((k / g.nx()) as isize));
                c = c.max(l.spectral_radius_x(cell, x, y) / g.hx() + l.spectral_radius_y(cell, x, y) / g.hy());
            }
        }
        _ => {}
    }
    dt * c
}

#[derive(Debug, Clone, PartialEq)]
pub struct StepDiagnostics {
    /// Courant number of the initial data at the chosen step.
    pub courant: f64,
    /// True when `courant` exceeds the assumed stability bound.
    pub courant_exceeded: bool,
    /// Extremes of each component over all time levels.
    pub min: Vec<f64>,
    pub max: Vec<f64>,
    /// Central-member weight per cell of the final field.
    pub central_weights: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub field: CellField,
    pub steps: usize,
    pub dt: f64,
    pub diagnostics: StepDiagnostics,
}

/// Number of step pairs `m` so that `2m` equal steps reach `t_final` with a
/// mesh ratio no larger than `lambda`, where `Δt = λ ℓ`.
pub fn step_pairs(t_final: f64, lambda: f64, length: f64) -> usize {
    let ratio = t_final / (2.0 * lambda * length);
    // absorb rounding in ratios that are integers up to a few ulps
    ((ratio * (1.0 - 1e-12)).ceil() as usize).max(1)
}

fn update_extremes(field: &CellField, min: &mut [f64], max: &mut [f64]) {
    let d = field.components();
    for cell in field.values().chunks(d) {
        for r in 0..d {
            min[r] = min[r].min(cell[r]);
            max[r] = max[r].max(cell[r]);
        }
    }
}

/// Integrates to `t_final` with `2m` staggered steps of equal length, so the
/// result is back on the grid of `initial`. `lambda` is the mesh ratio in the
/// sense of [`ratio_length`].
pub fn run(
    initial: &CellField,
    law: &Law,
    t_final: f64,
    lambda: f64,
    params: &CwenoParams,
    bc: BoundaryCondition,
) -> Result<RunReport> {
    if !(t_final > 0.0 && t_final.is_finite()) {
        return Err(CwenoError::InvalidParameter(format!("final time must be positive, got {t_final}")));
    }
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(CwenoError::InvalidParameter(format!("mesh ratio must be positive, got {lambda}")));
    }
    params.validate()?;
    initial.check_finite()?;
    let steps = 2 * step_pairs(t_final, lambda, ratio_length(initial.grid()));
    let dt = t_final / steps as f64;
    let courant = courant_number(initial, law, dt);

    let d = initial.components();
    let (mut min, mut max) = (vec![f64::INFINITY; d], vec![f64::NEG_INFINITY; d]);
    update_extremes(initial, &mut min, &mut max);
    let mut field = initial.clone();
    let t0 = initial.time();
    for k in 0..steps {
        field = step(&field, law, dt, params, bc)?;
        field.set_time(t0 + (k + 1) as f64 * dt);
        update_extremes(&field, &mut min, &mut max);
    }
    let central_weights = central_weights(&field, bc, params)?;
    Ok(RunReport {
        field,
        steps,
        dt,
        diagnostics: StepDiagnostics {
            courant,
            courant_exceeded: courant > COURANT_MAX * (1.0 + 1e-12),
            min,
            max,
            central_weights,
        },
    })
}
