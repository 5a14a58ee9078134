//! Reference solutions used to measure errors.
//!
//! Nothing in here touches the reconstruction or the time stepper; the
//! evaluators only use characteristics, root finding and the exact Riemann
//! solver.

mod riemann;

use std::f64::consts::PI;
use std::sync::Arc;

pub use riemann::{Primitive, RiemannSolution};

use crate::error::{CwenoError, Result};
use crate::mesh::{CellField, Grid};
use crate::models::EulerState;
use crate::quadrature::{mean_gl5, mean_gl5_2d};

type Evaluator = dyn Fn(f64, f64, f64, &mut [f64]) -> Result<()> + Send + Sync;

/// Pointwise exact solution `(x, y, t) → state`, valid for `t < valid_until`.
/// One-dimensional solutions ignore `y`.
#[derive(Clone)]
pub struct ExactSolution {
    components: usize,
    valid_until: f64,
    eval: Arc<Evaluator>,
}

impl std::fmt::Debug for ExactSolution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ExactSolution")
            .field("components", &self.components)
            .field("valid_until", &self.valid_until)
            .finish_non_exhaustive()
    }
}

impl ExactSolution {
    pub fn new(
        components: usize,
        valid_until: f64,
        eval: impl Fn(f64, f64, f64, &mut [f64]) -> Result<()> + Send + Sync + 'static,
    ) -> Self {
        Self {
            components,
            valid_until,
            eval: Arc::new(eval),
        }
    }

    pub fn components(&self) -> usize {
        self.components
    }

    pub fn valid_until(&self) -> f64 {
        self.valid_until
    }

    pub fn eval(&self, x: f64, y: f64, t: f64, out: &mut [f64]) -> Result<()> {
        if t >= self.valid_until {
            return Err(CwenoError::OutsideValidity {
                t,
                limit: self.valid_until,
            });
        }
        (self.eval)(x, y, t, out)
    }
}

fn wrap(x: f64, (a, b): (f64, f64)) -> f64 {
    a + (x - a).rem_euclid(b - a)
}

/// `u0` at the foot of the characteristic through `(x, t)`, periodic on `domain`.
pub fn advection_exact(u0: impl Fn(f64) -> f64, speed: f64, x: f64, t: f64, domain: (f64, f64)) -> f64 {
    u0(wrap(x - speed * t, domain))
}

/// Two-dimensional version of [`advection_exact`] with speeds `(a, b)`.
pub fn advection_exact_2d(
    u0: impl Fn(f64, f64) -> f64,
    speeds: (f64, f64),
    (x, y): (f64, f64),
    t: f64,
    domain: ((f64, f64), (f64, f64)),
) -> f64 {
    u0(wrap(x - speeds.0 * t, domain.0), wrap(y - speeds.1 * t, domain.1))
}

pub fn advection_solution_1d(
    u0: impl Fn(f64) -> f64 + Send + Sync + 'static,
    speed: f64,
    domain: (f64, f64),
) -> ExactSolution {
    ExactSolution::new(1, f64::INFINITY, move |x, _y, t, out| {
        out[0] = advection_exact(&u0, speed, x, t, domain);
        Ok(())
    })
}

pub fn advection_solution_2d(
    u0: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
    speeds: (f64, f64),
    domain: ((f64, f64), (f64, f64)),
) -> ExactSolution {
    ExactSolution::new(1, f64::INFINITY, move |x, y, t, out| {
        out[0] = advection_exact_2d(&u0, speeds, (x, y), t, domain);
        Ok(())
    })
}

/// Solid-body rotation of `u0` about `center` with angular speed `omega`.
pub fn rotation_solution(
    u0: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
    center: (f64, f64),
    omega: f64,
) -> ExactSolution {
    ExactSolution::new(1, f64::INFINITY, move |x, y, t, out| {
        let (c, s) = ((omega * t).cos(), (omega * t).sin());
        let (dx, dy) = (x - center.0, y - center.1);
        out[0] = u0(center.0 + c * dx + s * dy, center.1 - s * dx + c * dy);
        Ok(())
    })
}

/// Smooth initial data for the inviscid Burgers equation.
pub struct BurgersInitial<'a> {
    pub u0: &'a dyn Fn(f64) -> f64,
    pub du0: &'a dyn Fn(f64) -> f64,
    /// Bounds of `u0`; the solution stays inside them before breaking.
    pub range: (f64, f64),
    pub breaking_time: f64,
}

/// Solves `u = u0(x − u t)` before the first shock forms.
pub fn burgers_exact_preshock(init: &BurgersInitial<'_>, x: f64, t: f64) -> Result<f64> {
    if t >= init.breaking_time {
        return Err(CwenoError::OutsideValidity {
            t,
            limit: init.breaking_time,
        });
    }
    let g = |u: f64| u - (init.u0)(x - u * t);
    let mut u = (init.u0)(x);
    for _ in 0..50 {
        let r = g(u);
        if r.abs() < 1e-14 {
            return Ok(u);
        }
        let dg = 1.0 + t * (init.du0)(x - u * t);
        let next = u - r / dg;
        if !next.is_finite() || next < init.range.0 - 1.0 || next > init.range.1 + 1.0 {
            break;
        }
        u = next;
    }
    // g is increasing before breaking, so bisection on the range always works
    let (mut lo, mut hi) = init.range;
    if g(lo) > 0.0 || g(hi) < 0.0 {
        return Err(CwenoError::NoConvergence(format!("no bracket at x = {x}, t = {t}")));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo < 1e-15 * (1.0 + mid.abs()) {
            break;
        }
    }
    let u = 0.5 * (lo + hi);
    if g(u).abs() < 1e-12 {
        Ok(u)
    } else {
        Err(CwenoError::NoConvergence(format!("residual {} at x = {x}", g(u))))
    }
}

fn burgers_sine_u0(x: f64) -> f64 {
    1.0 + 0.5 * (PI * x).sin()
}

fn burgers_sine_du0(x: f64) -> f64 {
    0.5 * PI * (PI * x).cos()
}

/// Initial data `1 + ½ sin(πx)`; the first shock forms at `t = 2/π`.
pub fn burgers_sine_initial() -> BurgersInitial<'static> {
    BurgersInitial {
        u0: &burgers_sine_u0,
        du0: &burgers_sine_du0,
        range: (0.5, 1.5),
        breaking_time: 2.0 / PI,
    }
}

pub fn burgers_sine_solution() -> ExactSolution {
    let init = burgers_sine_initial();
    ExactSolution::new(1, init.breaking_time, move |x, _y, t, out| {
        out[0] = burgers_exact_preshock(&burgers_sine_initial(), x, t)?;
        Ok(())
    })
}

/// Exact Riemann solution for states separated at `x0`.
pub fn euler_riemann_exact(left: &EulerState, right: &EulerState, xi: f64) -> Result<EulerState> {
    Ok(RiemannSolution::solve(left, right)?.sample(xi))
}

pub fn riemann_solution(left: EulerState, right: EulerState, x0: f64) -> Result<ExactSolution> {
    let sol = RiemannSolution::solve(&left, &right)?;
    Ok(ExactSolution::new(3, f64::INFINITY, move |x, _y, t, out| {
        let s = if t > 0.0 {
            sol.sample((x - x0) / t)
        } else if x < x0 {
            left
        } else {
            right
        };
        out.copy_from_slice(&s.conserved());
        Ok(())
    }))
}

/// Cell means of `exact` at time `t` by five-point Gauss–Legendre per axis.
pub fn exact_cell_averages(exact: &ExactSolution, grid: &Grid, t: f64) -> Result<CellField> {
    let d = exact.components();
    let mut values = vec![0.0; grid.cell_count() * d];
    let mut buf = vec![0.0; d];
    let mut failure = None;
    match grid {
        Grid::D1(g) => {
            for (j, cell) in values.chunks_mut(d).enumerate() {
                let (a, b) = g.edges(j as isize);
                for (c, v) in cell.iter_mut().enumerate() {
                    *v = mean_gl5(a, b, |x| match exact.eval(x, 0.0, t, &mut buf) {
                        Ok(()) => buf[c],
                        Err(e) => {
                            failure.get_or_insert(e);
                            f64::NAN
                        }
                    });
                }
            }
        }
        Grid::D2(g) => {
            let nx = g.nx();
            for (k, cell) in values.chunks_mut(d).enumerate() {
                let (xr, yr) = (g.x.edges((k % nx) as isize), g.y.edges((k / nx) as isize));
                for (c, v) in cell.iter_mut().enumerate() {
                    *v = mean_gl5_2d(xr, yr, |x, y| match exact.eval(x, y, t, &mut buf) {
                        Ok(()) => buf[c],
                        Err(e) => {
                            failure.get_or_insert(e);
                            f64::NAN
                        }
                    });
                }
            }
        }
    }
    if let Some(e) = failure {
        return Err(e);
    }
    CellField::new(*grid, d, values, t)
}

/// Exact values at the cell centers (the pointwise error variant).
pub fn exact_point_values(exact: &ExactSolution, grid: &Grid, t: f64) -> Result<CellField> {
    let d = exact.components();
    let mut values = vec![0.0; grid.cell_count() * d];
    match grid {
        Grid::D1(g) => {
            for (j, cell) in values.chunks_mut(d).enumerate() {
                exact.eval(g.center(j as isize), 0.0, t, cell)?;
            }
        }
        Grid::D2(g) => {
            let nx = g.nx();
            for (k, cell) in values.chunks_mut(d).enumerate() {
                exact.eval(g.x.center((k % nx) as isize), g.y.center((k / nx) as isize), t, cell)?;
            }
        }
    }
    CellField::new(*grid, d, values, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::{Grid1D, Grid2D};
    use crate::models::{GAMMA, LAX_LEFT, LAX_RIGHT, SOD_LEFT, SOD_RIGHT};
    use crate::quadrature::mean_gl5_composite;
    use approx::assert_relative_eq;

    #[test]
    fn advection_examples() {
        let u0 = |x: f64| (PI * x).sin();
        for x in [-0.9, -0.2, 0.0, 0.45, 0.99] {
            assert_relative_eq!(advection_exact(u0, 1.0, x, 2.0, (-1.0, 1.0)), u0(x), epsilon = 1e-14);
            assert_relative_eq!(
                advection_exact(u0, 1.0, x, 0.5, (-1.0, 1.0)),
                (PI * (x - 0.5)).sin(),
                epsilon = 1e-14
            );
        }
        let u2 = |x: f64, y: f64| (PI * x).sin().powi(2) * (PI * y).cos();
        let dom = ((0.0, 1.0), (0.0, 1.0));
        assert_relative_eq!(advection_exact_2d(u2, (1.0, 1.0), (0.3, 0.7), 1.0, dom), u2(0.3, 0.7), epsilon = 1e-14);
    }

    #[test]
    fn burgers_examples() {
        let init = burgers_sine_initial();
        assert_eq!(burgers_exact_preshock(&init, 0.3, 0.0).unwrap(), burgers_sine_u0(0.3));
        let flat = BurgersInitial {
            u0: &|_| 1.0,
            du0: &|_| 0.0,
            range: (1.0, 1.0),
            breaking_time: f64::INFINITY,
        };
        assert_eq!(burgers_exact_preshock(&flat, 0.7, 5.0).unwrap(), 1.0);
        assert!(matches!(
            burgers_exact_preshock(&init, 0.0, 0.7),
            Err(CwenoError::OutsideValidity { .. })
        ));
    }

    #[test]
    fn burgers_root_matches_bracketing_scan() {
        let init = burgers_sine_initial();
        let (x, t) = (0.5, 0.33);
        let u = burgers_exact_preshock(&init, x, t).unwrap();
        let g = |u: f64| u - 1.0 - 0.5 * (PI * (x - t * u)).sin();
        assert!(g(u).abs() < 1e-13);
        // independent oracle: scan 10^6 points of the range for the sign change
        let n = 1_000_000;
        let (lo, hi) = init.range;
        let step = (hi - lo) / n as f64;
        let k = (0..n).find(|&k| g(lo + k as f64 * step) <= 0.0 && g(lo + (k + 1) as f64 * step) > 0.0).unwrap();
        assert!(u >= lo + k as f64 * step - 1e-15 && u <= lo + (k + 1) as f64 * step + 1e-15);
    }

    #[test]
    fn burgers_implicit_relation_holds_everywhere() {
        let init = burgers_sine_initial();
        let mut seed = 7u64;
        let mut rnd = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (seed >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..10_000 {
            let x = -1.0 + 2.0 * rnd();
            let t = 0.999 * init.breaking_time * rnd();
            let u = burgers_exact_preshock(&init, x, t).unwrap();
            assert!((u - burgers_sine_u0(x - u * t)).abs() < 1e-12);
        }
    }

    fn sod() -> RiemannSolution {
        RiemannSolution::solve(&EulerState::from_slice(&SOD_LEFT, GAMMA), &EulerState::from_slice(&SOD_RIGHT, GAMMA))
            .unwrap()
    }

    #[test]
    fn equal_states_are_constant() {
        let s = EulerState::from_slice(&LAX_LEFT, GAMMA);
        for xi in [-3.0, 0.0, 0.5, 7.0] {
            let got = euler_riemann_exact(&s, &s, xi).unwrap();
            for (a, b) in got.conserved().iter().zip(s.conserved()) {
                assert_relative_eq!(*a, b, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn sod_star_state_is_self_consistent() {
        let sol = sod();
        assert!(sol.wave_residual().abs() < 1e-12);
        // literature values for this data: p* ≈ 0.30313, u* ≈ 0.92745
        assert!((sol.p_star - 0.30313).abs() < 1e-5);
        assert!((sol.u_star - 0.92745).abs() < 1e-5);
        let mid = sol.sample_primitive(sol.u_star - 1e-9);
        assert_relative_eq!(mid.p, sol.p_star, max_relative = 1e-12);
    }

    fn flux(s: &EulerState) -> [f64; 3] {
        crate::models::euler_flux(s).unwrap()
    }

    #[test]
    fn rankine_hugoniot_and_rarefaction_invariants() {
        for (l, r) in [(SOD_LEFT, SOD_RIGHT), (LAX_LEFT, LAX_RIGHT)] {
            let sol = RiemannSolution::solve(&EulerState::from_slice(&l, GAMMA), &EulerState::from_slice(&r, GAMMA))
                .unwrap();
            let (sl, sr) = sol.shock_speeds();
            assert!(sl.is_none(), "both data sets have a left rarefaction");
            let s = sr.expect("right shock");
            let before = sol.sample(s + 1e-9);
            let after = sol.sample(s - 1e-9);
            let (fb, fa) = (flux(&before), flux(&after));
            for k in 0..3 {
                let res = (fa[k] - fb[k]) - s * (after.conserved()[k] - before.conserved()[k]);
                assert!(res.abs() < 1e-10, "RH residual {res}");
            }
            // u + 2c/(γ-1) and p/ρ^γ constant through the left fan
            let [head, tail, ..] = sol.wave_speeds();
            let inv = |p: Primitive| {
                let c = (GAMMA * p.p / p.rho).sqrt();
                (p.u + 2.0 * c / (GAMMA - 1.0), p.p / p.rho.powf(GAMMA))
            };
            let reference = inv(sol.left);
            for k in 0..=10 {
                let xi = head + (tail - head) * k as f64 / 10.0;
                let got = inv(sol.sample_primitive(xi));
                assert!((got.0 - reference.0).abs() < 1e-10);
                assert!((got.1 - reference.1).abs() < 1e-10 * reference.1.max(1.0));
            }
        }
    }

    #[test]
    fn lax_solution_conserves_mass() {
        let (l, r) = (EulerState::from_slice(&LAX_LEFT, GAMMA), EulerState::from_slice(&RIEMANN_RIGHT_LAX, GAMMA));
        let sol = RiemannSolution::solve(&l, &r).unwrap();
        let (t, half) = (0.16, 2.0);
        // integrate ρ piecewise between the wave locations so every panel is smooth
        let mut breaks: Vec<f64> = sol.wave_speeds().iter().map(|s| s * t).collect();
        breaks.insert(0, -half);
        breaks.push(half);
        let mut mass = 0.0;
        for w in breaks.windows(2) {
            if w[1] > w[0] {
                mass += (w[1] - w[0]) * mean_gl5_composite(w[0], w[1], 200, |x| sol.sample(x / t).rho);
            }
        }
        let initial = half * (l.rho + r.rho);
        let expected = initial + t * (l.m - r.m);
        assert!((mass - expected).abs() < 1e-8, "{mass} vs {expected}");
    }

    const RIEMANN_RIGHT_LAX: [f64; 3] = LAX_RIGHT;

    #[test]
    fn riemann_solution_is_self_similar() {
        let ex = riemann_solution(EulerState::from_slice(&SOD_LEFT, GAMMA), EulerState::from_slice(&SOD_RIGHT, GAMMA), 0.0)
            .unwrap();
        let (mut a, mut b) = ([0.0; 3], [0.0; 3]);
        for (x, t) in [(0.1, 0.1), (-0.2, 0.16), (0.3, 0.2), (0.05, 0.01)] {
            ex.eval(x, 0.0, t, &mut a).unwrap();
            ex.eval(3.0 * x, 0.0, 3.0 * t, &mut b).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn vacuum_is_rejected() {
        let l = EulerState::from_primitive(1.0, -10.0, 0.1, GAMMA);
        let r = EulerState::from_primitive(1.0, 10.0, 0.1, GAMMA);
        assert_eq!(RiemannSolution::solve(&l, &r).unwrap_err(), CwenoError::Vacuum);
    }

    #[test]
    fn cell_average_examples() {
        let g = Grid::D1(Grid1D::new(20, -1.0, 1.0).unwrap());
        let c = exact_cell_averages(&ExactSolution::new(1, f64::INFINITY, |_, _, _, o| { o[0] = 2.5; Ok(()) }), &g, 0.0).unwrap();
        assert!(c.values().iter().all(|&v| (v - 2.5).abs() < 1e-15));
        let lin = ExactSolution::new(1, f64::INFINITY, |x, _, _, o| {
            o[0] = 3.0 * x - 1.0;
            Ok(())
        });
        let c = exact_cell_averages(&lin, &g, 0.0).unwrap();
        let Grid::D1(g1) = g else { unreachable!() };
        for (j, v) in c.values().iter().enumerate() {
            assert_relative_eq!(*v, 3.0 * g1.center(j as isize) - 1.0, epsilon = 1e-14);
        }
        let sine = advection_solution_1d(|x| (PI * x).sin(), 1.0, (-1.0, 1.0));
        let c = exact_cell_averages(&sine, &g, 0.0).unwrap();
        for (j, v) in c.values().iter().enumerate() {
            let (a, b) = g1.edges(j as isize);
            let closed = ((PI * a).cos() - (PI * b).cos()) / (PI * 0.1);
            assert!((v - closed).abs() < 1e-12);
        }
        let quad = ExactSolution::new(1, f64::INFINITY, |x, y, _, o| {
            o[0] = x * x - 2.0 * x * y + 0.5 * y * y;
            Ok(())
        });
        let g2 = Grid::D2(Grid2D::new(5, 4, (0.0, 1.0), (-1.0, 1.0)).unwrap());
        let c = exact_cell_averages(&quad, &g2, 0.0).unwrap();
        let Grid::D2(gg) = g2 else { unreachable!() };
        for (k, v) in c.values().iter().enumerate() {
            let (xc, yc) = (gg.x.center((k % 5) as isize), gg.y.center((k / 5) as isize));
            let (hx, hy) = (gg.hx(), gg.hy());
            let analytic = xc * xc + hx * hx / 12.0 - 2.0 * xc * yc + 0.5 * (yc * yc + hy * hy / 12.0);
            assert!((v - analytic).abs() < 1e-13);
        }
    }

    #[test]
    fn validity_window_enforced() {
        let g = Grid::D1(Grid1D::new(8, -1.0, 1.0).unwrap());
        assert!(matches!(
            exact_cell_averages(&burgers_sine_solution(), &g, 1.0),
            Err(CwenoError::OutsideValidity { .. })
        ));
    }
}
