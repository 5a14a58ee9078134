//! Uniform grids, cell-average storage and ghost cells.
//!
//! Staggering is carried as metadata: a staggered grid keeps the same cell
//! count and bounds as its parent and shifts every cell center by half a
//! cell. Cell `j` of a staggered 1D grid therefore sits between cells `j` and
//! `j + 1` of the aligned grid.

use crate::error::{CwenoError, Result};

/// Smallest number of cells per axis; the compact stencil touches two neighbors.
pub const MIN_CELLS: usize = 4;

/// Ghost width used by the time steppers in every direction.
pub const GHOST_WIDTH: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Offset {
    Aligned,
    Staggered,
}

impl Offset {
    pub fn flipped(self) -> Self {
        match self {
            Offset::Aligned => Offset::Staggered,
            Offset::Staggered => Offset::Aligned,
        }
    }

    /// Shift of the cell centers in units of the cell width.
    pub fn shift(self) -> f64 {
        match self {
            Offset::Aligned => 0.0,
            Offset::Staggered => 0.5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundaryCondition {
    Periodic,
    Outflow,
}

impl std::str::FromStr for BoundaryCondition {
    type Err = CwenoError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "periodic" => Ok(Self::Periodic),
            "outflow" => Ok(Self::Outflow),
            other => Err(CwenoError::InvalidParameter(format!(
                "unknown boundary condition `{other}` (expected periodic or outflow)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    n: usize,
    x_left: f64,
    x_right: f64,
    offset: Offset,
}

impl Grid1D {
    pub fn new(n: usize, x_left: f64, x_right: f64) -> Result<Self> {
        if n < MIN_CELLS {
            return Err(CwenoError::InvalidGrid(format!(
                "need at least {MIN_CELLS} cells, got {n}"
            )));
        }
        if !(x_left.is_finite() && x_right.is_finite() && x_right > x_left) {
            return Err(CwenoError::InvalidGrid(format!(
                "bounds [{x_left}, {x_right}] are not an interval"
            )));
        }
        Ok(Self {
            n,
            x_left,
            x_right,
            offset: Offset::Aligned,
        })
    }

    pub fn with_offset(mut self, offset: Offset) -> Self {
        self.offset = offset;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bounds(&self) -> (f64, f64) {
        (self.x_left, self.x_right)
    }

    pub fn h(&self) -> f64 {
        (self.x_right - self.x_left) / self.n as f64
    }

    pub fn offset(&self) -> Offset {
        self.offset
    }

    /// Center of cell `j`; negative and out-of-range indices extrapolate.
    pub fn center(&self, j: isize) -> f64 {
        self.x_left + (j as f64 + 0.5 + self.offset.shift()) * self.h()
    }

    /// Left and right edges of cell `j`.
    pub fn edges(&self, j: isize) -> (f64, f64) {
        let c = self.center(j);
        let h2 = 0.5 * self.h();
        (c - h2, c + h2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid2D {
    pub x: Grid1D,
    pub y: Grid1D,
}

impl Grid2D {
    pub fn new(nx: usize, ny: usize, x_bounds: (f64, f64), y_bounds: (f64, f64)) -> Result<Self> {
        Ok(Self {
            x: Grid1D::new(nx, x_bounds.0, x_bounds.1)?,
            y: Grid1D::new(ny, y_bounds.0, y_bounds.1)?,
        })
    }

    pub fn with_offset(self, offset: Offset) -> Self {
        Self {
            x: self.x.with_offset(offset),
            y: self.y.with_offset(offset),
        }
    }

    pub fn nx(&self) -> usize {
        self.x.n()
    }

    pub fn ny(&self) -> usize {
        self.y.n()
    }

    pub fn hx(&self) -> f64 {
        self.x.h()
    }

    pub fn hy(&self) -> f64 {
        self.y.h()
    }

    pub fn offsets(&self) -> [Offset; 2] {
        [self.x.offset(), self.y.offset()]
    }

    pub fn cell_area(&self) -> f64 {
        self.hx() * self.hy()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Grid {
    D1(Grid1D),
    D2(Grid2D),
}

impl Grid {
    pub fn cell_count(&self) -> usize {
        match self {
            Grid::D1(g) => g.n(),
            Grid::D2(g) => g.nx() * g.ny(),
        }
    }

    pub fn cell_volume(&self) -> f64 {
        match self {
            Grid::D1(g) => g.h(),
            Grid::D2(g) => g.cell_area(),
        }
    }

    /// Per-axis offsets; 1D grids report a single entry.
    pub fn offsets(&self) -> Vec<Offset> {
        match self {
            Grid::D1(g) => vec![g.offset()],
            Grid::D2(g) => g.offsets().to_vec(),
        }
    }

    pub fn dims(&self) -> usize {
        match self {
            Grid::D1(_) => 1,
            Grid::D2(_) => 2,
        }
    }

    /// Same cell layout, ignoring staggering.
    pub fn congruent(&self, other: &Grid) -> bool {
        match (self, other) {
            (Grid::D1(a), Grid::D1(b)) => a.with_offset(Offset::Aligned) == b.with_offset(Offset::Aligned),
            (Grid::D2(a), Grid::D2(b)) => {
                a.with_offset(Offset::Aligned) == b.with_offset(Offset::Aligned)
            }
            _ => false,
        }
    }
}

impl From<Grid1D> for Grid {
    fn from(g: Grid1D) -> Self {
        Grid::D1(g)
    }
}

impl From<Grid2D> for Grid {
    fn from(g: Grid2D) -> Self {
        Grid::D2(g)
    }
}

/// Cell averages of a `d`-component state. Values are stored cell-major:
/// component `c` of cell `k` lives at `k * d + c`. In 2D, cell `(i, j)` has
/// linear index `j * nx + i` with `i` running along x.
#[derive(Debug, Clone, PartialEq)]
pub struct CellField {
    grid: Grid,
    d: usize,
    values: Vec<f64>,
    time: f64,
}

impl CellField {
    pub fn new(grid: impl Into<Grid>, d: usize, values: Vec<f64>, time: f64) -> Result<Self> {
        let grid = grid.into();
        if d == 0 {
            return Err(CwenoError::ShapeMismatch("component count must be positive".into()));
        }
        let expected = grid.cell_count() * d;
        if values.len() != expected {
            return Err(CwenoError::ShapeMismatch(format!(
                "expected {expected} values, got {}",
                values.len()
            )));
        }
        if let Some(k) = values.iter().position(|v| !v.is_finite()) {
            return Err(CwenoError::NonFinite {
                cell: k / d,
                component: k % d,
            });
        }
        Ok(Self {
            grid,
            d,
            values,
            time,
        })
    }

    pub fn zeros(grid: impl Into<Grid>, d: usize) -> Self {
        let grid = grid.into();
        let len = grid.cell_count() * d;
        Self {
            grid,
            d,
            values: vec![0.0; len],
            time: 0.0,
        }
    }

    /// Builds a scalar 1D field from a closure over cell indices.
    pub fn from_fn_1d(grid: Grid1D, d: usize, mut f: impl FnMut(usize, &mut [f64])) -> Self {
        let mut values = vec![0.0; grid.n() * d];
        for (j, cell) in values.chunks_mut(d).enumerate() {
            f(j, cell);
        }
        Self {
            grid: Grid::D1(grid),
            d,
            values,
            time: 0.0,
        }
    }

    pub fn from_fn_2d(grid: Grid2D, d: usize, mut f: impl FnMut(usize, usize, &mut [f64])) -> Self {
        let nx = grid.nx();
        let mut values = vec![0.0; grid.nx() * grid.ny() * d];
        for (k, cell) in values.chunks_mut(d).enumerate() {
            f(k % nx, k / nx, cell);
        }
        Self {
            grid: Grid::D2(grid),
            d,
            values,
            time: 0.0,
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn components(&self) -> usize {
        self.d
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn set_time(&mut self, t: f64) {
        self.time = t;
    }

    pub fn cell(&self, k: usize) -> &[f64] {
        &self.values[k * self.d..(k + 1) * self.d]
    }

    /// Values of one component, in cell order.
    pub fn component(&self, c: usize) -> Vec<f64> {
        self.values.iter().skip(c).step_by(self.d).copied().collect()
    }

    /// Σ ū · (cell volume), per component.
    pub fn totals(&self) -> Vec<f64> {
        let vol = self.grid.cell_volume();
        let mut out = vec![0.0; self.d];
        for cell in self.values.chunks(self.d) {
            for (o, v) in out.iter_mut().zip(cell) {
                *o += v;
            }
        }
        out.iter_mut().for_each(|o| *o *= vol);
        out
    }

    pub fn check_finite(&self) -> Result<()> {
        match self.values.iter().position(|v| !v.is_finite()) {
            Some(k) => Err(CwenoError::NonFinite {
                cell: k / self.d,
                component: k % self.d,
            }),
            None => Ok(()),
        }
    }
}

/// Returns a copy of `field` padded with `width` ghost cells on each side of
/// every axis. The padded grid extends the bounds by `width` cells.
pub fn extend_with_ghosts(field: &CellField, bc: BoundaryCondition, width: usize) -> Result<CellField> {
    if width == 0 {
        return Err(CwenoError::ZeroGhostWidth);
    }
    field.check_finite()?;
    let d = field.d;
    match field.grid {
        Grid::D1(g) => {
            let n = g.n();
            if width > n {
                return Err(CwenoError::GhostTooWide { width, n });
            }
            let mut buf = vec![0.0; (n + 2 * width) * d];
            buf[width * d..(width + n) * d].copy_from_slice(&field.values);
            fill_ghosts_1d(&mut buf, n, d, width, bc);
            let h = g.h();
            let (a, b) = g.bounds();
            let grid = Grid1D::new(n + 2 * width, a - width as f64 * h, b + width as f64 * h)?
                .with_offset(g.offset());
            Ok(CellField {
                grid: Grid::D1(grid),
                d,
                values: buf,
                time: field.time,
            })
        }
        Grid::D2(g) => {
            let (nx, ny) = (g.nx(), g.ny());
            for n in [nx, ny] {
                if width > n {
                    return Err(CwenoError::GhostTooWide { width, n });
                }
            }
            let mut buf = vec![0.0; (nx + 2 * width) * (ny + 2 * width) * d];
            copy_into_padded_2d(&field.values, &mut buf, nx, ny, d, width);
            fill_ghosts_2d(&mut buf, nx, ny, d, width, bc);
            let pad = |axis: &Grid1D, n: usize| -> Result<Grid1D> {
                let h = axis.h();
                let (a, b) = axis.bounds();
                Ok(Grid1D::new(n + 2 * width, a - width as f64 * h, b + width as f64 * h)?
                    .with_offset(axis.offset()))
            };
            let grid = Grid2D {
                x: pad(&g.x, nx)?,
                y: pad(&g.y, ny)?,
            };
            Ok(CellField {
                grid: Grid::D2(grid),
                d,
                values: buf,
                time: field.time,
            })
        }
    }
}

/// True when `field` lives on the same staggering as `reference`.
pub fn destagger_pair_check(field: &CellField, reference: &Grid) -> bool {
    field.grid.offsets() == reference.offsets()
}

#[inline]
fn ghost_source(k: isize, n: usize, bc: BoundaryCondition) -> usize {
    match bc {
        BoundaryCondition::Periodic => k.rem_euclid(n as isize) as usize,
        BoundaryCondition::Outflow => k.clamp(0, n as isize - 1) as usize,
    }
}

/// Fills the `width` ghost cells on both ends of a padded 1D buffer whose
/// interior occupies cells `width..width + n`.
pub(crate) fn fill_ghosts_1d(buf: &mut [f64], n: usize, d: usize, width: usize, bc: BoundaryCondition) {
    debug_assert_eq!(buf.len(), (n + 2 * width) * d);
    for g in 0..width {
        for (dst, k) in [(g, g as isize - width as isize), (width + n + g, (n + g) as isize)] {
            let src = width + ghost_source(k, n, bc);
            for c in 0..d {
                buf[dst * d + c] = buf[src * d + c];
            }
        }
    }
}

pub(crate) fn copy_into_padded_2d(src: &[f64], buf: &mut [f64], nx: usize, ny: usize, d: usize, width: usize) {
    let px = nx + 2 * width;
    for j in 0..ny {
        let dst = ((j + width) * px + width) * d;
        buf[dst..dst + nx * d].copy_from_slice(&src[j * nx * d..(j + 1) * nx * d]);
    }
}

/// Fills ghost rows and columns of a padded 2D buffer (x fastest). Corner
/// ghosts are filled by applying the x rule to the y-ghost rows.
pub(crate) fn fill_ghosts_2d(buf: &mut [f64], nx: usize, ny: usize, d: usize, width: usize, bc: BoundaryCondition) {
    let px = nx + 2 * width;
    let py = ny + 2 * width;
    debug_assert_eq!(buf.len(), px * py * d);
    for row in width..width + ny {
        fill_ghosts_1d(&mut buf[row * px * d..(row + 1) * px * d], nx, d, width, bc);
    }
    for g in 0..width {
        for (dst, k) in [(g, g as isize - width as isize), (width + ny + g, (ny + g) as isize)] {
            let src = width + ghost_source(k, ny, bc);
            let (s, t) = (src * px * d, dst * px * d);
            buf.copy_within(s..s + px * d, t);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field_1d(values: &[f64]) -> CellField {
        let g = Grid1D::new(values.len(), 0.0, 1.0).unwrap();
        CellField::new(g, 1, values.to_vec(), 0.0).unwrap()
    }

    #[test]
    fn periodic_ghosts_wrap() {
        let f = field_1d(&[1.0, 2.0, 3.0, 4.0]);
        let e = extend_with_ghosts(&f, BoundaryCondition::Periodic, 2).unwrap();
        assert_eq!(e.values(), &[3.0, 4.0, 1.0, 2.0, 3.0, 4.0, 1.0, 2.0]);
    }

    #[test]
    fn outflow_ghosts_copy_boundary() {
        let f = field_1d(&[1.0, 2.0, 3.0, 4.0]);
        let e = extend_with_ghosts(&f, BoundaryCondition::Outflow, 2).unwrap();
        assert_eq!(e.values(), &[1.0, 1.0, 1.0, 2.0, 3.0, 4.0, 4.0, 4.0]);
    }

    #[test]
    fn ghost_width_bounds() {
        let f = field_1d(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(
            extend_with_ghosts(&f, BoundaryCondition::Periodic, 5),
            Err(CwenoError::GhostTooWide { width: 5, n: 4 })
        );
        assert!(extend_with_ghosts(&f, BoundaryCondition::Periodic, 4).is_ok());
        assert_eq!(
            extend_with_ghosts(&f, BoundaryCondition::Outflow, 0),
            Err(CwenoError::ZeroGhostWidth)
        );
    }

    #[test]
    fn extended_grid_keeps_spacing() {
        let f = field_1d(&[0.0; 8]);
        let e = extend_with_ghosts(&f, BoundaryCondition::Outflow, 2).unwrap();
        let Grid::D1(g) = e.grid() else { unreachable!() };
        assert_eq!(g.n(), 12);
        assert!((g.h() - 0.125).abs() < 1e-15);
        assert!((g.center(2) - 0.0625).abs() < 1e-15);
    }

    #[test]
    fn staggered_centers_shift_by_half() {
        let g = Grid1D::new(10, 0.0, 1.0).unwrap();
        assert!((g.center(0) - 0.05).abs() < 1e-15);
        let s = g.with_offset(Offset::Staggered);
        assert!((s.center(0) - 0.1).abs() < 1e-15);
    }

    #[test]
    fn pair_check() {
        let g = Grid1D::new(4, 0.0, 1.0).unwrap();
        let aligned = CellField::zeros(g, 1);
        let staggered = CellField::zeros(g.with_offset(Offset::Staggered), 1);
        assert!(destagger_pair_check(&aligned, &Grid::D1(g)));
        assert!(!destagger_pair_check(&staggered, &Grid::D1(g)));
        let twice = g.with_offset(Offset::Aligned.flipped().flipped());
        assert!(destagger_pair_check(&aligned, &Grid::D1(twice)));
    }

    #[test]
    fn non_finite_rejected() {
        let g = Grid1D::new(4, 0.0, 1.0).unwrap();
        let err = CellField::new(g, 2, vec![0.0, 0.0, 0.0, f64::NAN, 0.0, 0.0, 0.0, 0.0], 0.0);
        assert_eq!(err, Err(CwenoError::NonFinite { cell: 1, component: 1 }));
    }

    #[test]
    fn ghosts_2d_periodic_and_outflow() {
        let g = Grid2D::new(4, 4, (0.0, 1.0), (0.0, 1.0)).unwrap();
        let f = CellField::from_fn_2d(g, 1, |i, j, c| c[0] = (10 * j + i) as f64);
        let e = extend_with_ghosts(&f, BoundaryCondition::Periodic, 2).unwrap();
        let at = |i: usize, j: usize| e.values()[j * 8 + i];
        // ghost (-1, -1) wraps to (3, 3)
        assert_eq!(at(1, 1), 33.0);
        assert_eq!(at(7, 2), 1.0);
        let o = extend_with_ghosts(&f, BoundaryCondition::Outflow, 2).unwrap();
        let at = |i: usize, j: usize| o.values()[j * 8 + i];
        assert_eq!(at(0, 0), 0.0);
        assert_eq!(at(7, 7), 33.0);
        assert_eq!(at(0, 5), 30.0);
    }

    #[test]
    fn periodic_extension_preserves_interior_sum() {
        let f = field_1d(&[0.3, -1.2, 4.5, 2.25, 7.0]);
        let e = extend_with_ghosts(&f, BoundaryCondition::Periodic, 3).unwrap();
        let interior: f64 = e.values()[3..8].iter().sum();
        assert_eq!(interior, f.values().iter().sum::<f64>());
    }

    #[test]
    fn nested_periodic_extension_matches_wider_one() {
        let f = field_1d(&[1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
        let once = extend_with_ghosts(&f, BoundaryCondition::Periodic, 4).unwrap();
        let twice = extend_with_ghosts(
            &extend_with_ghosts(&f, BoundaryCondition::Periodic, 2).unwrap(),
            BoundaryCondition::Periodic,
            2,
        )
        .unwrap();
        // the outer ring of the nested extension wraps the padded grid, so the
        // two agree on the interior plus the first two ghost cells per side
        assert_eq!(&once.values()[2..12], &twice.values()[2..12]);
    }
}
