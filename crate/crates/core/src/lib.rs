//! Compact third-order central WENO schemes on staggered grids.
//!
//! The reconstruction in each cell blends one-sided linear polynomials with a
//! central parabola (1D) or paraboloid (2D) using nonlinear weights. Time
//! integration is a staggered central step whose predictor is a Runge–Kutta
//! method with natural continuous extension, so the flux integrals in time
//! are evaluated with Simpson's rule.

pub mod cweno1d;
pub mod cweno2d;
pub mod error;
pub mod harness;
pub mod mesh;
pub mod models;
pub mod oracles;
pub mod quadrature;
pub mod scheme;

pub use cweno1d::{CwenoParams, WeightMode};
pub use error::{CwenoError, Result};
pub use mesh::{BoundaryCondition, CellField, Grid, Grid1D, Grid2D, Offset};
pub use models::{builtin_problem, Law, Problem, PROBLEM_NAMES};
pub use scheme::{run, RunReport};
