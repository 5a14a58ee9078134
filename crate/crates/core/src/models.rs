//! Conservation laws, global smoothness indicators and the built-in problems.

use std::f64::consts::PI;

use crate::error::{CwenoError, Result};
use crate::mesh::{BoundaryCondition, CellField, Grid1D, Grid2D};
use crate::oracles::{self, ExactSolution};
use crate::quadrature::{mean_gl5, mean_gl5_2d};

/// Largest stable Courant number assumed for the compact scheme.
pub const COURANT_MAX: f64 = 3.0 / 7.0;

/// `u_t + f(u)_x = 0`.
pub trait ConservationLaw1D: Send + Sync {
    fn components(&self) -> usize;
    fn component_names(&self) -> &'static [&'static str];
    fn flux(&self, u: &[f64], out: &mut [f64]);
    fn spectral_radius(&self, u: &[f64]) -> f64;

    /// Rejects states outside the physical domain, returning the offending quantity.
    fn check_admissible(&self, _u: &[f64]) -> std::result::Result<(), (&'static str, f64)> {
        Ok(())
    }
}

/// `u_t + f(u, x, y)_x + g(u, x, y)_y = 0`. The position argument lets
/// variable-coefficient fluxes (rotation) share the machinery.
pub trait ConservationLaw2D: Send + Sync {
    fn components(&self) -> usize;
    fn component_names(&self) -> &'static [&'static str];
    fn flux_x(&self, u: &[f64], x: f64, y: f64, out: &mut [f64]);
    fn flux_y(&self, u: &[f64], x: f64, y: f64, out: &mut [f64]);
    fn spectral_radius_x(&self, u: &[f64], x: f64, y: f64) -> f64;
    fn spectral_radius_y(&self, u: &[f64], x: f64, y: f64) -> f64;
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearAdvection {
    pub speed: f64,
}

impl ConservationLaw1D for LinearAdvection {
    fn components(&self) -> usize {
        1
    }
    fn component_names(&self) -> &'static [&'static str] {
        &["u"]
    }
    fn flux(&self, u: &[f64], out: &mut [f64]) {
        out[0] = self.speed * u[0];
    }
    fn spectral_radius(&self, _u: &[f64]) -> f64 {
        self.speed.abs()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Burgers;

impl ConservationLaw1D for Burgers {
    fn components(&self) -> usize {
        1
    }
    fn component_names(&self) -> &'static [&'static str] {
        &["u"]
    }
    fn flux(&self, u: &[f64], out: &mut [f64]) {
        out[0] = 0.5 * u[0] * u[0];
    }
    fn spectral_radius(&self, u: &[f64]) -> f64 {
        u[0].abs()
    }
}

/// Conserved Euler state (ρ, m, E) with its adiabatic constant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerState {
    pub rho: f64,
    pub m: f64,
    pub e: f64,
    pub gamma: f64,
}

impl EulerState {
    pub fn new(rho: f64, m: f64, e: f64, gamma: f64) -> Self {
        Self { rho, m, e, gamma }
    }

    pub fn from_slice(u: &[f64], gamma: f64) -> Self {
        Self::new(u[0], u[1], u[2], gamma)
    }

    pub fn from_primitive(rho: f64, u: f64, p: f64, gamma: f64) -> Self {
        Self::new(rho, rho * u, p / (gamma - 1.0) + 0.5 * rho * u * u, gamma)
    }

    pub fn velocity(&self) -> f64 {
        self.m / self.rho
    }

    pub fn pressure(&self) -> f64 {
        (self.gamma - 1.0) * (self.e - 0.5 * self.m * self.m / self.rho)
    }

    pub fn sound_speed(&self) -> f64 {
        (self.gamma * self.pressure() / self.rho).sqrt()
    }

    pub fn conserved(&self) -> [f64; 3] {
        [self.rho, self.m, self.e]
    }

    pub fn check(&self) -> std::result::Result<(), (&'static str, f64)> {
        if !(self.rho > 0.0) {
            return Err(("density", self.rho));
        }
        let p = self.pressure();
        if !(p > 0.0) {
            return Err(("pressure", p));
        }
        Ok(())
    }
}

/// Euler flux (m, ρu² + p, u(E + p)).
pub fn euler_flux(state: &EulerState) -> Result<[f64; 3]> {
    state.check().map_err(|(quantity, value)| CwenoError::Inadmissible {
        cell: 0,
        quantity,
        value,
    })?;
    Ok(euler_flux_unchecked(state))
}

#[inline]
fn euler_flux_unchecked(s: &EulerState) -> [f64; 3] {
    let u = s.m / s.rho;
    let p = s.pressure();
    [s.m, s.m * u + p, u * (s.e + p)]
}

/// `|u| + √(γp/ρ)`.
pub fn euler_spectral_radius(state: &EulerState) -> Result<f64> {
    state.check().map_err(|(quantity, value)| CwenoError::Inadmissible {
        cell: 0,
        quantity,
        value,
    })?;
    Ok(state.velocity().abs() + state.sound_speed())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Euler1D {
    pub gamma: f64,
}

impl Default for Euler1D {
    fn default() -> Self {
        Self { gamma: 1.4 }
    }
}

impl ConservationLaw1D for Euler1D {
    fn components(&self) -> usize {
        3
    }
    fn component_names(&self) -> &'static [&'static str] {
        &["rho", "m", "E"]
    }
    fn flux(&self, u: &[f64], out: &mut [f64]) {
        out.copy_from_slice(&euler_flux_unchecked(&EulerState::from_slice(u, self.gamma)));
    }
    fn spectral_radius(&self, u: &[f64]) -> f64 {
        let s = EulerState::from_slice(u, self.gamma);
        s.velocity().abs() + s.sound_speed().max(0.0)
    }
    fn check_admissible(&self, u: &[f64]) -> std::result::Result<(), (&'static str, f64)> {
        EulerState::from_slice(u, self.gamma).check()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearAdvection2D {
    pub a: f64,
    pub b: f64,
}

impl ConservationLaw2D for LinearAdvection2D {
    fn components(&self) -> usize {
        1
    }
    fn component_names(&self) -> &'static [&'static str] {
        &["u"]
    }
    fn flux_x(&self, u: &[f64], _x: f64, _y: f64, out: &mut [f64]) {
        out[0] = self.a * u[0];
    }
    fn flux_y(&self, u: &[f64], _x: f64, _y: f64, out: &mut [f64]) {
        out[0] = self.b * u[0];
    }
    fn spectral_radius_x(&self, _u: &[f64], _x: f64, _y: f64) -> f64 {
        self.a.abs()
    }
    fn spectral_radius_y(&self, _u: &[f64], _x: f64, _y: f64) -> f64 {
        self.b.abs()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Burgers2D;

impl ConservationLaw2D for Burgers2D {
    fn components(&self) -> usize {
        1
    }
    fn component_names(&self) -> &'static [&'static str] {
        &["u"]
    }
    fn flux_x(&self, u: &[f64], _x: f64, _y: f64, out: &mut [f64]) {
        out[0] = 0.5 * u[0] * u[0];
    }
    fn flux_y(&self, u: &[f64], _x: f64, _y: f64, out: &mut [f64]) {
        out[0] = 0.5 * u[0] * u[0];
    }
    fn spectral_radius_x(&self, u: &[f64], _x: f64, _y: f64) -> f64 {
        u[0].abs()
    }
    fn spectral_radius_y(&self, u: &[f64], _x: f64, _y: f64) -> f64 {
        u[0].abs()
    }
}

/// Solid-body rotation: velocity (−ω(y − y_c), ω(x − x_c)).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rotation2D {
    pub center: (f64, f64),
    pub omega: f64,
}

impl Rotation2D {
    pub fn velocity(&self, x: f64, y: f64) -> (f64, f64) {
        (-self.omega * (y - self.center.1), self.omega * (x - self.center.0))
    }
}

impl ConservationLaw2D for Rotation2D {
    fn components(&self) -> usize {
        1
    }
    fn component_names(&self) -> &'static [&'static str] {
        &["u"]
    }
    fn flux_x(&self, u: &[f64], x: f64, y: f64, out: &mut [f64]) {
        out[0] = self.velocity(x, y).0 * u[0];
    }
    fn flux_y(&self, u: &[f64], x: f64, y: f64, out: &mut [f64]) {
        out[0] = self.velocity(x, y).1 * u[0];
    }
    fn spectral_radius_x(&self, _u: &[f64], x: f64, y: f64) -> f64 {
        self.velocity(x, y).0.abs()
    }
    fn spectral_radius_y(&self, _u: &[f64], x: f64, y: f64) -> f64 {
        self.velocity(x, y).1.abs()
    }
}

/// Shared indicators for a system: `(1/d') Σ_r IS_{k,r} / ‖ū_r‖₂`, where the
/// sum skips components with zero norm and `d'` counts the rest. Returns all
/// zeros when every component vanishes.
pub fn global_smoothness_indicators<const N: usize>(per_component: &[[f64; N]], norms: &[f64]) -> [f64; N] {
    let mut out = [0.0; N];
    let mut used = 0usize;
    for (is, &norm) in per_component.iter().zip(norms) {
        if norm > 0.0 {
            used += 1;
            for (o, v) in out.iter_mut().zip(is) {
                *o += v / norm;
            }
        }
    }
    if used > 0 {
        out.iter_mut().for_each(|o| *o /= used as f64);
    }
    out
}

/// `(Σ_j |v_{j,r}|² · vol)^{1/2}` for each component of cell-major data.
pub fn component_norms(values: &[f64], d: usize, cell_volume: f64) -> Vec<f64> {
    let mut acc = vec![0.0; d];
    for cell in values.chunks(d) {
        for (a, v) in acc.iter_mut().zip(cell) {
            *a += v * v;
        }
    }
    acc.into_iter().map(|s| (s * cell_volume).sqrt()).collect()
}

pub enum Law {
    D1(Box<dyn ConservationLaw1D>),
    D2(Box<dyn ConservationLaw2D>),
}

impl Law {
    pub fn component_names(&self) -> &'static [&'static str] {
        match self {
            Law::D1(l) => l.component_names(),
            Law::D2(l) => l.component_names(),
        }
    }
}

impl std::fmt::Debug for Law {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Law::D1(l) => write!(f, "Law::D1({:?})", l.component_names()),
            Law::D2(l) => write!(f, "Law::D2({:?})", l.component_names()),
        }
    }
}

/// A ready-to-run experiment: law, initial averages and its defaults.
#[derive(Debug)]
pub struct Problem {
    pub name: &'static str,
    pub law: Law,
    pub initial: CellField,
    pub bc: BoundaryCondition,
    pub lambda: f64,
    pub epsilon: f64,
    pub t_final: f64,
    pub exact: Option<ExactSolution>,
}

pub const PROBLEM_NAMES: [&str; 8] = [
    "advection-sin",
    "advection-sin4",
    "burgers",
    "sod",
    "lax",
    "advection-2d",
    "rotation-2d",
    "burgers2d",
];

pub const SOD_LEFT: [f64; 3] = [1.0, 0.0, 2.5];
pub const SOD_RIGHT: [f64; 3] = [0.125, 0.0, 0.25];
pub const LAX_LEFT: [f64; 3] = [0.445, 0.311, 8.928];
pub const LAX_RIGHT: [f64; 3] = [0.5, 0.0, 1.4275];
pub const GAMMA: f64 = 1.4;

fn sine_average(a: f64, b: f64) -> f64 {
    ((PI * a).cos() - (PI * b).cos()) / (PI * (b - a))
}

fn averages_1d(grid: Grid1D, f: impl Fn(f64) -> f64) -> CellField {
    CellField::from_fn_1d(grid, 1, |j, c| {
        let (a, b) = grid.edges(j as isize);
        c[0] = mean_gl5(a, b, &f);
    })
}

fn averages_2d(grid: Grid2D, f: impl Fn(f64, f64) -> f64) -> CellField {
    CellField::from_fn_2d(grid, 1, |i, j, c| {
        c[0] = mean_gl5_2d(grid.x.edges(i as isize), grid.y.edges(j as isize), &f);
    })
}

/// Piecewise-constant shock-tube data with the interface at x = 0.5 on [0, 1].
pub fn shock_tube_field(grid: Grid1D, left: [f64; 3], right: [f64; 3], x0: f64) -> CellField {
    CellField::from_fn_1d(grid, 3, |j, c| {
        let (a, b) = grid.edges(j as isize);
        // fraction of the cell left of the interface
        let theta = ((x0 - a) / (b - a)).clamp(0.0, 1.0);
        for k in 0..3 {
            c[k] = theta * left[k] + (1.0 - theta) * right[k];
        }
    })
}

/// Builds the named problem on `n` cells per axis.
pub fn builtin_problem(name: &str, n: usize) -> Result<Problem> {
    let advection_lambda = 0.9 * COURANT_MAX;
    let problem = match name {
        "advection-sin" => {
            let grid = Grid1D::new(n, -1.0, 1.0)?;
            let initial = CellField::from_fn_1d(grid, 1, |j, c| {
                let (a, b) = grid.edges(j as isize);
                c[0] = sine_average(a, b);
            });
            Problem {
                name: "advection-sin",
                law: Law::D1(Box::new(LinearAdvection { speed: 1.0 })),
                initial,
                bc: BoundaryCondition::Periodic,
                lambda: advection_lambda,
                epsilon: 1e-2,
                t_final: 10.0,
                exact: Some(oracles::advection_solution_1d(|x| (PI * x).sin(), 1.0, (-1.0, 1.0))),
            }
        }
        "advection-sin4" => {
            let grid = Grid1D::new(n, -1.0, 1.0)?;
            let u0 = |x: f64| (PI * x).sin().powi(4);
            Problem {
                name: "advection-sin4",
                law: Law::D1(Box::new(LinearAdvection { speed: 1.0 })),
                initial: averages_1d(grid, u0),
                bc: BoundaryCondition::Periodic,
                lambda: advection_lambda,
                epsilon: 1e-2,
                t_final: 1.0,
                exact: Some(oracles::advection_solution_1d(u0, 1.0, (-1.0, 1.0))),
            }
        }
        "burgers" => {
            let grid = Grid1D::new(n, -1.0, 1.0)?;
            let initial = CellField::from_fn_1d(grid, 1, |j, c| {
                let (a, b) = grid.edges(j as isize);
                c[0] = 1.0 + 0.5 * sine_average(a, b);
            });
            Problem {
                name: "burgers",
                law: Law::D1(Box::new(Burgers)),
                initial,
                bc: BoundaryCondition::Periodic,
                lambda: 0.66 * COURANT_MAX,
                epsilon: 1e-2,
                t_final: 0.33,
                exact: Some(oracles::burgers_sine_solution()),
            }
        }
        "sod" | "lax" => {
            let (left, right, name) = if name == "sod" {
                (SOD_LEFT, SOD_RIGHT, "sod")
            } else {
                (LAX_LEFT, LAX_RIGHT, "lax")
            };
            let grid = Grid1D::new(n, 0.0, 1.0)?;
            let exact = oracles::riemann_solution(
                EulerState::from_slice(&left, GAMMA),
                EulerState::from_slice(&right, GAMMA),
                0.5,
            )?;
            Problem {
                name,
                law: Law::D1(Box::new(Euler1D { gamma: GAMMA })),
                initial: shock_tube_field(grid, left, right, 0.5),
                bc: BoundaryCondition::Outflow,
                lambda: 0.1,
                epsilon: 1e-2,
                t_final: 0.16,
                exact: Some(exact),
            }
        }
        "advection-2d" => {
            let grid = Grid2D::new(n, n, (0.0, 1.0), (0.0, 1.0))?;
            let u0 = |x: f64, y: f64| ((PI * x).sin() * (PI * y).sin()).powi(2);
            Problem {
                name: "advection-2d",
                law: Law::D2(Box::new(LinearAdvection2D { a: 1.0, b: 1.0 })),
                initial: averages_2d(grid, u0),
                bc: BoundaryCondition::Periodic,
                lambda: 0.425,
                epsilon: 1e-2,
                t_final: 1.0,
                exact: Some(oracles::advection_solution_2d(u0, (1.0, 1.0), ((0.0, 1.0), (0.0, 1.0)))),
            }
        }
        "rotation-2d" => {
            let grid = Grid2D::new(n, n, (0.0, 1.0), (0.0, 1.0))?;
            let law = Rotation2D {
                center: (0.5, 0.5),
                omega: 1.0,
            };
            Problem {
                name: "rotation-2d",
                law: Law::D2(Box::new(law)),
                initial: averages_2d(grid, square_patch),
                bc: BoundaryCondition::Outflow,
                lambda: 0.425,
                epsilon: 1e-2,
                t_final: PI / 2.0,
                exact: Some(oracles::rotation_solution(square_patch, law.center, law.omega)),
            }
        }
        "burgers2d" => {
            let grid = Grid2D::new(n, n, (0.0, 1.0), (0.0, 1.0))?;
            Problem {
                name: "burgers2d",
                law: Law::D2(Box::new(Burgers2D)),
                initial: averages_2d(grid, |x, y| ((PI * x).sin() * (PI * y).sin()).powi(2)),
                bc: BoundaryCondition::Periodic,
                lambda: 0.425,
                epsilon: 1e-2,
                t_final: 1.5,
                exact: None,
            }
        }
        other => {
            return Err(CwenoError::UnknownProblem {
                name: other.to_string(),
                valid: PROBLEM_NAMES.to_vec(),
            })
        }
    };
    Ok(problem)
}

/// Indicator of the square [1/4, 3/4]².
pub fn square_patch(x: f64, y: f64) -> f64 {
    if (x - 0.5).abs() <= 0.25 && (y - 0.5).abs() <= 0.25 {
        1.0
    } else {
        0.0
    }
}
