//! Browser bindings for the demo page in `www/`.
//!
//! Every operation has a plain Rust form (used by the native tests) and a
//! `#[wasm_bindgen]` wrapper that turns errors into JavaScript exceptions.

use wasm_bindgen::prelude::*;

use cweno::cweno1d::{combine_1d, smoothness_indicators_1d, WeightSet};
use cweno::harness::{error_norms, shock_report, RunConfig};
use cweno::oracles::exact_cell_averages;
use cweno::{builtin_problem, CwenoError, CwenoParams, Grid, Result};

fn params(eps: f64, p: u32, ideal: bool) -> Result<CwenoParams> {
    if ideal {
        Ok(CwenoParams::ideal())
    } else {
        CwenoParams::new(eps, p)
    }
}

fn js_err(e: CwenoError) -> JsError {
    JsError::new(&e.to_string())
}

/// Final state of a shock tube together with its exact solution.
#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct ShockProfile {
    x: Vec<f64>,
    density: Vec<f64>,
    exact_density: Vec<f64>,
    w_center: Vec<f64>,
    l1: f64,
}

#[wasm_bindgen]
impl ShockProfile {
    pub fn x(&self) -> Vec<f64> {
        self.x.clone()
    }

    pub fn density(&self) -> Vec<f64> {
        self.density.clone()
    }

    #[wasm_bindgen(js_name = exactDensity)]
    pub fn exact_density(&self) -> Vec<f64> {
        self.exact_density.clone()
    }

    #[wasm_bindgen(js_name = wCenter)]
    pub fn w_center(&self) -> Vec<f64> {
        self.w_center.clone()
    }

    pub fn l1(&self) -> f64 {
        self.l1
    }
}

pub fn compute_shock(name: &str, n: usize, eps: f64, p: u32, ideal: bool) -> Result<ShockProfile> {
    let config = RunConfig {
        params: params(eps, p, ideal)?,
        ..RunConfig::default()
    };
    let report = shock_report(name, n, &config)?;
    let Grid::D1(grid) = *report.run.field.grid() else {
        return Err(CwenoError::InvalidParameter(format!("`{name}` is not one-dimensional")));
    };
    Ok(ShockProfile {
        x: (0..grid.n()).map(|j| grid.center(j as isize)).collect(),
        density: report.run.field.component(0),
        exact_density: report.exact_density,
        w_center: report.run.diagnostics.central_weights,
        l1: report.density_l1,
    })
}

/// Runs the shock tube `name` ("sod" or "lax") on `n` cells.
#[wasm_bindgen(js_name = shockTube)]
pub fn shock_tube(name: &str, n: usize, eps: f64, p: u32, ideal: bool) -> std::result::Result<ShockProfile, JsError> {
    compute_shock(name, n, eps, p, ideal).map_err(js_err)
}

/// Weights and reconstruction of the middle cell of three cell averages on a
/// unit-width mesh. Returns `[w_L, w_C, w_R, P(x_0), ..., P(x_{samples-1})]`
/// with the samples spread evenly over the cell `[-1/2, 1/2]`.
pub fn compute_weights(u_m1: f64, u_0: f64, u_p1: f64, eps: f64, p: u32, samples: usize) -> Result<Vec<f64>> {
    let params = params(eps, p, false)?;
    if samples < 2 {
        return Err(CwenoError::InvalidParameter(format!("need at least 2 samples, got {samples}")));
    }
    let w = WeightSet::compute(smoothness_indicators_1d(u_m1, u_0, u_p1), &params).weights;
    let poly = combine_1d(u_m1, u_0, u_p1, 1.0, &w);
    let mut out = w.to_vec();
    out.extend((0..samples).map(|k| poly.eval(-0.5 + k as f64 / (samples - 1) as f64)));
    Ok(out)
}

#[wasm_bindgen(js_name = weightExplorer)]
pub fn weight_explorer(
    u_m1: f64,
    u_0: f64,
    u_p1: f64,
    eps: f64,
    p: u32,
    samples: usize,
) -> std::result::Result<Vec<f64>, JsError> {
    compute_weights(u_m1, u_0, u_p1, eps, p, samples).map_err(js_err)
}

/// Cell averages of a 2D problem after a run, row by row from the bottom.
#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct Field2D {
    n: usize,
    values: Vec<f64>,
    exact: Vec<f64>,
    l1: f64,
    steps: usize,
}

#[wasm_bindgen]
impl Field2D {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> Vec<f64> {
        self.values.clone()
    }

    pub fn exact(&self) -> Vec<f64> {
        self.exact.clone()
    }

    pub fn l1(&self) -> f64 {
        self.l1
    }

    pub fn steps(&self) -> usize {
        self.steps
    }
}

pub fn compute_field_2d(name: &str, n: usize, t_final: f64, eps: f64, p: u32, ideal: bool) -> Result<Field2D> {
    let problem = builtin_problem(name, n)?;
    if !matches!(problem.initial.grid(), Grid::D2(_)) || problem.initial.components() != 1 {
        return Err(CwenoError::InvalidParameter(format!("`{name}` is not a scalar 2D problem")));
    }
    let config = RunConfig {
        params: params(eps, p, ideal)?,
        t_final: Some(t_final),
        ..RunConfig::default()
    };
    let report = cweno::harness::run_problem(&problem, &config)?;
    let (exact, l1) = match &problem.exact {
        Some(sol) if t_final < sol.valid_until() => {
            let reference = exact_cell_averages(sol, report.field.grid(), report.field.time())?;
            let l1 = error_norms(&report.field, &reference)?[0].l1;
            (reference.into_values(), l1)
        }
        _ => (Vec::new(), f64::NAN),
    };
    Ok(Field2D {
        n,
        values: report.field.into_values(),
        exact,
        l1,
        steps: report.steps,
    })
}

/// Runs a scalar 2D problem to `t_final` on an `n`×`n` mesh.
#[wasm_bindgen(js_name = field2d)]
pub fn field_2d(name: &str, n: usize, t_final: f64, eps: f64, p: u32, ideal: bool) -> std::result::Result<Field2D, JsError> {
    compute_field_2d(name, n, t_final, eps, p, ideal).map_err(js_err)
}
