//! Staggered step on Cartesian grids. The output cell with corners at four
//! input cell centers collects one quarter of each of those cells, and edge
//! fluxes are integrated with two Gauss nodes per half edge so that no node
//! lies on an interface of the input grid.

use crate::cweno1d::{derivative_with_weights, smoothness_indicators_1d, CwenoParams, IDEAL_1D};
use crate::cweno2d::{combine_2d, members_and_indicators, quarter_cell_average, Poly2D, Quadrant, Stencil3x3, IDEAL_2D};
use crate::error::{CwenoError, Result};
use crate::mesh::{copy_into_padded_2d, fill_ghosts_2d, BoundaryCondition, CellField, Grid, Grid2D, Offset, GHOST_WIDTH};
use crate::models::{component_norms, ConservationLaw2D};

use super::nce::{nce_predict, SIMPSON};
use super::one_d::check_law;
use super::shared_weights;

/// Number of distinct quadrature-node offsets inside a cell.
const CLASSES: usize = 8;

fn grid_of(field: &CellField) -> Result<Grid2D> {
    match field.grid() {
        Grid::D2(g) => Ok(*g),
        Grid::D1(_) => Err(CwenoError::ShapeMismatch("expected a 2D field".into())),
    }
}

/// Node offsets from the cell center. Classes 0..4 sit on the vertical line
/// X = 0 (upper half, then lower half), classes 4..8 on Y = 0 (right half,
/// then left half).
fn node_offsets(hx: f64, hy: f64) -> [(f64, f64); CLASSES] {
    let gx = hx / (4.0 * 3f64.sqrt());
    let gy = hy / (4.0 * 3f64.sqrt());
    let (qx, qy) = (0.25 * hx, 0.25 * hy);
    [
        (0.0, qy + gy),
        (0.0, qy - gy),
        (0.0, -qy + gy),
        (0.0, -qy - gy),
        (qx + gx, 0.0),
        (qx - gx, 0.0),
        (-qx + gx, 0.0),
        (-qx - gx, 0.0),
    ]
}

fn pad(values: &[f64], nx: usize, ny: usize, d: usize, width: usize, bc: BoundaryCondition) -> Vec<f64> {
    let mut buf = vec![0.0; (nx + 2 * width) * (ny + 2 * width) * d];
    copy_into_padded_2d(values, &mut buf, nx, ny, d, width);
    fill_ghosts_2d(&mut buf, nx, ny, d, width, bc);
    buf
}

struct Context<'a> {
    grid: Grid2D,
    d: usize,
    law: &'a dyn ConservationLaw2D,
    params: &'a CwenoParams,
    bc: BoundaryCondition,
}

impl Context<'_> {
    fn dims(&self) -> (usize, usize) {
        (self.grid.nx(), self.grid.ny())
    }

    /// Position of node class `offset` in cell (ip, jp) of a buffer padded by one.
    fn position(&self, ip: usize, jp: usize, offset: (f64, f64)) -> (f64, f64) {
        (
            self.grid.x.center(ip as isize - 1) + offset.0,
            self.grid.y.center(jp as isize - 1) + offset.1,
        )
    }

    /// Both fluxes on a one-ghost padded copy of `u`.
    fn fluxes(&self, u: &[f64], offset: (f64, f64)) -> Result<(Vec<f64>, Vec<f64>)> {
        Ok((self.flux(u, offset, true)?, self.flux(u, offset, false)?))
    }

    /// `f` (`along_x`) or `g` on a one-ghost padded copy of `u`.
    fn flux(&self, u: &[f64], offset: (f64, f64), along_x: bool) -> Result<Vec<f64>> {
        let (nx, ny) = self.dims();
        let d = self.d;
        let padded = pad(u, nx, ny, d, 1, self.bc);
        let px = nx + 2;
        let mut f = vec![0.0; padded.len()];
        for (k, cell) in padded.chunks(d).enumerate() {
            let (x, y) = self.position(k % px, k / px, offset);
            let out = &mut f[k * d..(k + 1) * d];
            if along_x {
                self.law.flux_x(cell, x, y, out);
            } else {
                self.law.flux_y(cell, x, y, out);
            }
        }
        if let Some(i) = f.iter().position(|v| !v.is_finite()) {
            return Err(CwenoError::NonFinite {
                cell: i / d,
                component: i % d,
            });
        }
        Ok(f)
    }

    fn interior_norms(&self, padded: &[f64]) -> Option<Vec<f64>> {
        let (nx, ny) = self.dims();
        let d = self.d;
        (d > 1).then(|| {
            let mut interior = vec![0.0; nx * ny * d];
            let px = nx + 2;
            for j in 0..ny {
                let src = ((j + 1) * px + 1) * d;
                interior[j * nx * d..(j + 1) * nx * d].copy_from_slice(&padded[src..src + nx * d]);
            }
            component_norms(&interior, d, self.grid.cell_area())
        })
    }

    /// `−(∂f/∂x + ∂g/∂y)` for point values sampled at one node class.
    fn rhs(&self, u: &[f64], offset: (f64, f64), out: &mut [f64]) -> Result<()> {
        let (nx, ny) = self.dims();
        let d = self.d;
        let (f, g) = self.fluxes(u, offset)?;
        let (nf, ng) = (self.interior_norms(&f), self.interior_norms(&g));
        let px = nx + 2;
        let (hx, hy) = (self.grid.hx(), self.grid.hy());
        for j in 0..ny {
            for i in 0..nx {
                let k = (j + 1) * px + i + 1;
                let (west, east, south, north) = (k - 1, k + 1, k - px, k + px);
                let wx = shared_weights(d, nf.as_deref(), self.params, &IDEAL_1D, |r| {
                    smoothness_indicators_1d(f[west * d + r], f[k * d + r], f[east * d + r])
                });
                let wy = shared_weights(d, ng.as_deref(), self.params, &IDEAL_1D, |r| {
                    smoothness_indicators_1d(g[south * d + r], g[k * d + r], g[north * d + r])
                });
                for r in 0..d {
                    let fx = derivative_with_weights(f[west * d + r], f[k * d + r], f[east * d + r], hx, &wx);
                    let gy = derivative_with_weights(g[south * d + r], g[k * d + r], g[north * d + r], hy, &wy);
                    out[(j * nx + i) * d + r] = -(fx + gy);
                }
            }
        }
        Ok(())
    }

    /// Simpson-in-time flux normal to the edge of this class, on a one-ghost
    /// padded grid.
    fn edge_flux(&self, point_values: &[f64], class: usize, offset: (f64, f64), dt: f64) -> Result<Vec<f64>> {
        let predictor = nce_predict(point_values, |u, out| self.rhs(u, offset, out), dt)?;
        let mut acc: Option<Vec<f64>> = None;
        for (level, weight) in predictor.levels().into_iter().zip(SIMPSON) {
            let normal = self.flux(level, offset, class < 4)?;
            match acc.as_mut() {
                None => acc = Some(normal.iter().map(|v| weight * v).collect()),
                Some(a) => a.iter_mut().zip(&normal).for_each(|(a, v)| *a += weight * v),
            }
        }
        Ok(acc.unwrap_or_default())
    }
}

/// Reconstructions on every cell of the padded buffer that has a full 3×3
/// stencil, and the central weight of each.
fn reconstruct_padded(
    buf: &[f64],
    px: usize,
    py: usize,
    d: usize,
    hx: f64,
    hy: f64,
    norms: Option<&[f64]>,
    params: &CwenoParams,
) -> (Vec<Poly2D>, Vec<f64>) {
    let mut polys = vec![Poly2D::default(); px * py * d];
    let mut centrals = vec![0.0; px * py];
    let mut members = [[Poly2D::default(); 5]; super::MAX_COMPONENTS];
    let mut is = [[0.0; 5]; super::MAX_COMPONENTS];
    for jp in 1..py - 1 {
        for ip in 1..px - 1 {
            for r in 0..d {
                let s = Stencil3x3::from_fn(hx, hy, |di, dj| {
                    let k = (jp as i32 + dj) as usize * px + (ip as i32 + di) as usize;
                    buf[k * d + r]
                });
                (members[r], is[r]) = members_and_indicators(&s);
            }
            let w = shared_weights(d, norms, params, &IDEAL_2D, |r| is[r]);
            let k = jp * px + ip;
            centrals[k] = w[4];
            for r in 0..d {
                polys[k * d + r] = combine_2d(&members[r], &w);
            }
        }
    }
    (polys, centrals)
}

#[cfg(feature = "parallel")]
fn per_class<T: Send>(f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    use rayon::prelude::*;
    (0..CLASSES).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn per_class<T>(f: impl Fn(usize) -> T) -> Vec<T> {
    (0..CLASSES).map(f).collect()
}

/// Weight of the central paraboloid in every cell of `field`.
pub fn central_weights_2d(field: &CellField, bc: BoundaryCondition, params: &CwenoParams) -> Result<Vec<f64>> {
    let g = grid_of(field)?;
    let (nx, ny, d) = (g.nx(), g.ny(), field.components());
    let buf = pad(field.values(), nx, ny, d, 1, bc);
    let norms = (d > 1).then(|| component_norms(field.values(), d, g.cell_area()));
    let (_, centrals) = reconstruct_padded(&buf, nx + 2, ny + 2, d, g.hx(), g.hy(), norms.as_deref(), params);
    let px = nx + 2;
    Ok((0..nx * ny).map(|k| centrals[(k / nx + 1) * px + k % nx + 1]).collect())
}

/// One staggered step on a 2D grid; both axes flip their offset.
pub fn step_2d(
    field: &CellField,
    law: &dyn ConservationLaw2D,
    dt: f64,
    params: &CwenoParams,
    bc: BoundaryCondition,
) -> Result<CellField> {
    let grid = grid_of(field)?;
    let d = law.components();
    check_law(field, d)?;
    params.validate()?;
    let [ox, oy] = grid.offsets();
    if ox != oy {
        return Err(CwenoError::InvalidGrid("both axes must share the same staggering".into()));
    }
    let (nx, ny) = (grid.nx(), grid.ny());
    let (hx, hy) = (grid.hx(), grid.hy());
    let w = GHOST_WIDTH;
    let (px, py) = (nx + 2 * w, ny + 2 * w);

    let buf = pad(field.values(), nx, ny, d, w, bc);
    let norms = (d > 1).then(|| component_norms(field.values(), d, grid.cell_area()));
    let (polys, _) = reconstruct_padded(&buf, px, py, d, hx, hy, norms.as_deref(), params);

    let ctx = Context { grid, d, law, params, bc };
    let offsets = node_offsets(hx, hy);
    let sample = |offset: (f64, f64)| {
        let mut pv = vec![0.0; nx * ny * d];
        for j in 0..ny {
            for i in 0..nx {
                let k = (j + w) * px + i + w;
                for r in 0..d {
                    pv[(j * nx + i) * d + r] = polys[k * d + r].eval(offset.0, offset.1);
                }
            }
        }
        pv
    };
    let fluxes: Vec<Vec<f64>> = per_class(|c| ctx.edge_flux(&sample(offsets[c]), c, offsets[c], dt))
        .into_iter()
        .collect::<Result<_>>()?;
    let pair = |a: usize, b: usize, k: usize| fluxes[a][k] + fluxes[b][k];

    // base cell (lower-left corner of the output cell) in one-ghost coordinates
    let shift = match ox {
        Offset::Aligned => 1,
        Offset::Staggered => 0,
    };
    let p1 = nx + 2;
    let (cx, cy) = (0.25 * dt / hx, 0.25 * dt / hy);
    let mut out = vec![0.0; nx * ny * d];
    for j in 0..ny {
        for i in 0..nx {
            let (bi, bj) = (i + shift, j + shift);
            let sw = bj * p1 + bi;
            let (se, nw, ne) = (sw + 1, sw + p1, sw + p1 + 1);
            // same cells in the two-ghost reconstruction buffer
            let q = |k: usize| (k / p1 + 1) * px + k % p1 + 1;
            for r in 0..d {
                let poly = |k: usize| &polys[q(k) * d + r];
                let avg = 0.25
                    * (quarter_cell_average(poly(sw), Quadrant::NE, hx, hy)
                        + quarter_cell_average(poly(se), Quadrant::NW, hx, hy)
                        + quarter_cell_average(poly(nw), Quadrant::SE, hx, hy)
                        + quarter_cell_average(poly(ne), Quadrant::SW, hx, hy));
                let (up, down, right, left) = (|k| pair(0, 1, k * d + r), |k| pair(2, 3, k * d + r), |k| pair(4, 5, k * d + r), |k| pair(6, 7, k * d + r));
                let x_term = cx * (up(sw) + down(nw) - up(se) - down(ne));
                let y_term = cy * (right(sw) + left(se) - right(nw) - left(ne));
                out[(j * nx + i) * d + r] = avg + x_term + y_term;
            }
        }
    }
    if let Some(i) = out.iter().position(|v| !v.is_finite()) {
        return Err(CwenoError::NonFinite {
            cell: i / d,
            component: i % d,
        });
    }
    let flipped = ox.flipped();
    CellField::new(grid.with_offset(flipped), d, out, field.time() + dt)
}
