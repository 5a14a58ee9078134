//! Staggered step for one space dimension.

use crate::cweno1d::{
    combine_1d, derivative_with_weights, smoothness_indicators_1d, staggered_half_averages,
    CwenoParams, Poly1D, IDEAL_1D,
};
use crate::error::{CwenoError, Result};
use crate::mesh::{fill_ghosts_1d, BoundaryCondition, CellField, Grid, Grid1D, Offset, GHOST_WIDTH};
use crate::models::{component_norms, ConservationLaw1D};

use super::nce::{nce_predict, SIMPSON};
use super::{shared_weights, MAX_COMPONENTS};

fn grid_of(field: &CellField) -> Result<Grid1D> {
    match field.grid() {
        Grid::D1(g) => Ok(*g),
        Grid::D2(_) => Err(CwenoError::ShapeMismatch("expected a 1D field".into())),
    }
}

pub(crate) fn check_law(field: &CellField, d: usize) -> Result<()> {
    if field.components() != d {
        return Err(CwenoError::ShapeMismatch(format!(
            "field has {} components, law expects {d}",
            field.components()
        )));
    }
    if d > MAX_COMPONENTS {
        return Err(CwenoError::ShapeMismatch(format!("at most {MAX_COMPONENTS} components are supported")));
    }
    Ok(())
}

/// Reconstruction weights for cell `k` of a padded buffer.
#[inline]
fn cell_weights(buf: &[f64], k: usize, d: usize, norms: Option<&[f64]>, params: &CwenoParams) -> [f64; 3] {
    shared_weights(d, norms, params, &IDEAL_1D, |r| {
        smoothness_indicators_1d(buf[(k - 1) * d + r], buf[k * d + r], buf[(k + 1) * d + r])
    })
}

fn norms_if_system(values: &[f64], d: usize, vol: f64) -> Option<Vec<f64>> {
    (d > 1).then(|| component_norms(values, d, vol))
}

/// `−∂f/∂x` at the centers of the interior cells of `padded`, which carries
/// one ghost cell at each end. `out` receives `padded.len() / d − 2` cells.
pub fn semidiscrete_rhs_1d(
    padded: &[f64],
    d: usize,
    law: &dyn ConservationLaw1D,
    h: f64,
    params: &CwenoParams,
    out: &mut [f64],
) -> Result<()> {
    let cells = padded.len() / d;
    if cells < 3 || out.len() != (cells - 2) * d {
        return Err(CwenoError::ShapeMismatch("rhs buffers do not match".into()));
    }
    if !(h > 0.0) {
        return Err(CwenoError::NonPositiveWidth(h));
    }
    let mut flux = vec![0.0; padded.len()];
    for (k, (u, f)) in padded.chunks(d).zip(flux.chunks_mut(d)).enumerate() {
        law.flux(u, f);
        if let Some(c) = f.iter().position(|v| !v.is_finite()) {
            return Err(CwenoError::NonFinite {
                cell: k.saturating_sub(1),
                component: c,
            });
        }
    }
    let norms = norms_if_system(&flux[d..(cells - 1) * d], d, h);
    for k in 1..cells - 1 {
        let w = cell_weights(&flux, k, d, norms.as_deref(), params);
        for r in 0..d {
            out[(k - 1) * d + r] =
                -derivative_with_weights(flux[(k - 1) * d + r], flux[k * d + r], flux[(k + 1) * d + r], h, &w);
        }
    }
    Ok(())
}

/// Reconstructions of every padded cell that has both neighbors.
fn reconstruct_padded(buf: &[f64], d: usize, h: f64, norms: Option<&[f64]>, params: &CwenoParams) -> (Vec<Poly1D>, Vec<f64>) {
    let cells = buf.len() / d;
    let mut polys = vec![Poly1D::default(); cells * d];
    let mut centrals = vec![0.0; cells];
    for k in 1..cells - 1 {
        let w = cell_weights(buf, k, d, norms, params);
        centrals[k] = w[1];
        for r in 0..d {
            polys[k * d + r] = combine_1d(buf[(k - 1) * d + r], buf[k * d + r], buf[(k + 1) * d + r], h, &w);
        }
    }
    (polys, centrals)
}

fn pad(values: &[f64], n: usize, d: usize, width: usize, bc: BoundaryCondition) -> Vec<f64> {
    let mut buf = vec![0.0; (n + 2 * width) * d];
    buf[width * d..(width + n) * d].copy_from_slice(values);
    fill_ghosts_1d(&mut buf, n, d, width, bc);
    buf
}

/// Weight of the central member in every cell of `field`.
pub fn central_weights_1d(field: &CellField, bc: BoundaryCondition, params: &CwenoParams) -> Result<Vec<f64>> {
    let g = grid_of(field)?;
    let (n, d) = (g.n(), field.components());
    let buf = pad(field.values(), n, d, 1, bc);
    let norms = norms_if_system(field.values(), d, g.h());
    Ok((1..=n).map(|k| cell_weights(&buf, k, d, norms.as_deref(), params)[1]).collect())
}

/// One staggered step of length `dt`. The result lives on the grid with the
/// opposite offset.
pub fn step_1d(
    field: &CellField,
    law: &dyn ConservationLaw1D,
    dt: f64,
    params: &CwenoParams,
    bc: BoundaryCondition,
) -> Result<CellField> {
    let g = grid_of(field)?;
    let d = law.components();
    check_law(field, d)?;
    params.validate()?;
    let (n, h) = (g.n(), g.h());
    let w = GHOST_WIDTH;

    let buf = pad(field.values(), n, d, w, bc);
    let norms = norms_if_system(field.values(), d, h);
    let (polys, _) = reconstruct_padded(&buf, d, h, norms.as_deref(), params);

    let point_values: Vec<f64> = polys[w * d..(w + n) * d].iter().map(|p| p.a0).collect();
    let predictor = nce_predict(
        &point_values,
        |u, out| semidiscrete_rhs_1d(&pad(u, n, d, 1, bc), d, law, h, params, out),
        dt,
    )?;

    // Simpson-in-time flux at every padded cell
    let mut flux = vec![0.0; buf.len()];
    let mut f = vec![0.0; d];
    for (level, weight) in predictor.levels().into_iter().zip(SIMPSON) {
        let padded = pad(level, n, d, w, bc);
        for (u, acc) in padded.chunks(d).zip(flux.chunks_mut(d)) {
            law.flux(u, &mut f);
            for (a, v) in acc.iter_mut().zip(&f) {
                *a += weight * v;
            }
        }
    }

    let lambda = dt / h;
    // output cell j lies between input cells (left, left + 1)
    let first_left = match g.offset() {
        Offset::Aligned => w,
        Offset::Staggered => w - 1,
    };
    let mut out = vec![0.0; n * d];
    for j in 0..n {
        let (a, b) = (first_left + j, first_left + j + 1);
        for r in 0..d {
            out[j * d + r] = staggered_half_averages(&polys[a * d + r], &polys[b * d + r], h)
                + lambda * (flux[a * d + r] - flux[b * d + r]);
        }
    }
    for (k, cell) in out.chunks(d).enumerate() {
        if let Some(c) = cell.iter().position(|v| !v.is_finite()) {
            return Err(CwenoError::NonFinite { cell: k, component: c });
        }
        law.check_admissible(cell)
            .map_err(|(quantity, value)| CwenoError::Inadmissible { cell: k, quantity, value })?;
    }
    CellField::new(g.with_offset(g.offset().flipped()), d, out, field.time() + dt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{Burgers, Euler1D, LinearAdvection};
    use std::f64::consts::PI;

    fn sine_field(n: usize) -> CellField {
        let g = Grid1D::new(n, -1.0, 1.0).unwrap();
        CellField::from_fn_1d(g, 1, |j, c| {
            let (a, b) = g.edges(j as isize);
            c[0] = ((PI * a).cos() - (PI * b).cos()) / (PI * (b - a));
        })
    }

    #[test]
    fn constant_states_are_preserved() {
        let g = Grid1D::new(16, 0.0, 1.0).unwrap();
        let params = CwenoParams::default();
        let f = CellField::from_fn_1d(g, 1, |_, c| c[0] = 1.0);
        for bc in [BoundaryCondition::Periodic, BoundaryCondition::Outflow] {
            let s = step_1d(&f, &Burgers, 0.01, &params, bc).unwrap();
            assert!(s.values().iter().all(|&v| (v - 1.0).abs() < 1e-15));
            assert_eq!(s.grid().offsets(), vec![Offset::Staggered]);
            let back = step_1d(&s, &Burgers, 0.01, &params, bc).unwrap();
            assert!(back.values().iter().all(|&v| (v - 1.0).abs() < 1e-15));
            assert_eq!(back.grid().offsets(), vec![Offset::Aligned]);
        }
        let e = CellField::from_fn_1d(g, 3, |_, c| c.copy_from_slice(&[1.0, 0.3, 2.5]));
        let s = step_1d(&e, &Euler1D::default(), 0.01, &params, BoundaryCondition::Outflow).unwrap();
        for cell in s.values().chunks(3) {
            for (a, b) in cell.iter().zip([1.0, 0.3, 2.5]) {
                assert!((a - b).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn rhs_examples() {
        let params = CwenoParams::default();
        let law = LinearAdvection { speed: 1.0 };
        let h = 0.37;
        let pts: Vec<f64> = (0..10).map(|k| k as f64 * h).collect();
        let mut out = vec![0.0; 8];
        semidiscrete_rhs_1d(&pts, 1, &law, h, &params, &mut out).unwrap();
        assert!(out.iter().all(|&v| (v + 1.0).abs() < 1e-13));

        let mut errs = vec![];
        for n in [160usize, 320] {
            let hh = 2.0 / n as f64;
            let x = |k: isize| -1.0 + (k as f64 + 0.5) * hh;
            let pts: Vec<f64> = (-1..=n as isize).map(|k| (PI * x(k)).sin()).collect();
            let mut out = vec![0.0; n];
            semidiscrete_rhs_1d(&pts, 1, &law, hh, &params, &mut out).unwrap();
            errs.push((0..n).map(|k| (out[k] + PI * (PI * x(k as isize)).cos()).abs()).fold(0.0, f64::max));
        }
        assert!(errs[1] < errs[0] && errs[0] < 1e-2, "{errs:?}");
    }

    #[test]
    fn periodic_steps_conserve_totals() {
        let f = sine_field(64);
        let params = CwenoParams::default();
        let mut cur = CellField::from_fn_1d(grid_of(&f).unwrap(), 1, |j, c| c[0] = 1.0 + f.values()[j]);
        let before = cur.totals()[0];
        for _ in 0..4 {
            cur = step_1d(&cur, &Burgers, 0.01, &params, BoundaryCondition::Periodic).unwrap();
            let after = cur.totals()[0];
            assert!((after - before).abs() <= 1e-13 * before.abs());
        }
    }

    #[test]
    fn two_step_advection_error_is_third_order() {
        let law = LinearAdvection { speed: 1.0 };
        let params = CwenoParams::default();
        let mut errs = vec![];
        for n in [80usize, 160, 320] {
            let f = sine_field(n);
            let h = 2.0 / n as f64;
            let dt = 0.9 * 3.0 / 7.0 * h;
            let s = step_1d(&f, &law, dt, &params, BoundaryCondition::Periodic).unwrap();
            let s = step_1d(&s, &law, dt, &params, BoundaryCondition::Periodic).unwrap();
            let t = 2.0 * dt;
            let g = grid_of(&s).unwrap();
            let err: f64 = (0..n)
                .map(|j| {
                    let (a, b) = g.edges(j as isize);
                    let exact = ((PI * (a - t)).cos() - (PI * (b - t)).cos()) / (PI * h);
                    (s.values()[j] - exact).abs() * h
                })
                .sum();
            errs.push(err);
        }
        // two steps is a fixed number of local errors: O(h^4) each
        let order = (errs[1] / errs[2]).log2();
        assert!(order > 2.7, "{errs:?}");
    }

    #[test]
    fn shape_errors() {
        let f = sine_field(16);
        let params = CwenoParams::default();
        assert!(matches!(
            step_1d(&f, &Euler1D::default(), 0.01, &params, BoundaryCondition::Periodic),
            Err(CwenoError::ShapeMismatch(_))
        ));
    }

    #[test]
    fn negative_pressure_is_reported() {
        let g = Grid1D::new(8, 0.0, 1.0).unwrap();
        let f = CellField::from_fn_1d(g, 3, |j, c| {
            c.copy_from_slice(if j < 4 { &[1.0, 0.0, 2.5] } else { &[1.0, 5.0, 0.01] })
        });
        let r = step_1d(&f, &Euler1D::default(), 0.05, &CwenoParams::default(), BoundaryCondition::Outflow);
        assert!(matches!(r, Err(CwenoError::Inadmissible { .. }) | Err(CwenoError::NonFinite { .. })));
    }
}
