//! Compact third-order CWENO reconstruction on Cartesian cells.
//!
//! Four one-sided planes (NE, NW, SW, SE) and a central paraboloid are blended
//! with ideal constants (1/8, 1/8, 1/8, 1/8, 1/2). Member order in arrays is
//! always NE, NW, SW, SE, C.

use crate::cweno1d::{nonlinear_weights, CwenoParams};

pub const IDEAL_2D: [f64; 5] = [0.125, 0.125, 0.125, 0.125, 0.5];

/// `c00 + c10·X + c01·Y + c11·XY + c20·X² + c02·Y²` about the cell center.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Poly2D {
    pub c00: f64,
    pub c10: f64,
    pub c01: f64,
    pub c11: f64,
    pub c20: f64,
    pub c02: f64,
}

impl Poly2D {
    pub fn plane(c00: f64, c10: f64, c01: f64) -> Self {
        Self {
            c00,
            c10,
            c01,
            ..Self::default()
        }
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.c00 + self.c10 * x + self.c01 * y + self.c11 * x * y + self.c20 * x * x + self.c02 * y * y
    }

    pub fn dx(&self, x: f64, y: f64) -> f64 {
        self.c10 + self.c11 * y + 2.0 * self.c20 * x
    }

    pub fn dy(&self, x: f64, y: f64) -> f64 {
        self.c01 + self.c11 * x + 2.0 * self.c02 * y
    }

    pub fn cell_mean(&self, hx: f64, hy: f64) -> f64 {
        self.c00 + (self.c20 * hx * hx + self.c02 * hy * hy) / 12.0
    }

    pub fn coefficients(&self) -> [f64; 6] {
        [self.c00, self.c10, self.c01, self.c11, self.c20, self.c02]
    }

    fn scaled(&self, w: f64) -> Self {
        Self {
            c00: w * self.c00,
            c10: w * self.c10,
            c01: w * self.c01,
            c11: w * self.c11,
            c20: w * self.c20,
            c02: w * self.c02,
        }
    }
}

impl std::ops::Add for Poly2D {
    type Output = Poly2D;

    fn add(self, o: Poly2D) -> Poly2D {
        Poly2D {
            c00: self.c00 + o.c00,
            c10: self.c10 + o.c10,
            c01: self.c01 + o.c01,
            c11: self.c11 + o.c11,
            c20: self.c20 + o.c20,
            c02: self.c02 + o.c02,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quadrant {
    NE,
    NW,
    SW,
    SE,
}

impl Quadrant {
    pub const ALL: [Quadrant; 4] = [Quadrant::NE, Quadrant::NW, Quadrant::SW, Quadrant::SE];

    /// Signs of the quadrant along x and y.
    pub fn signs(self) -> (f64, f64) {
        match self {
            Quadrant::NE => (1.0, 1.0),
            Quadrant::NW => (-1.0, 1.0),
            Quadrant::SW => (-1.0, -1.0),
            Quadrant::SE => (1.0, -1.0),
        }
    }
}

/// Nine cell averages around cell (i, j).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stencil3x3 {
    /// `u[b][a]` holds ū_{i+a-1, j+b-1}.
    pub u: [[f64; 3]; 3],
    pub hx: f64,
    pub hy: f64,
}

impl Stencil3x3 {
    pub fn new(u: [[f64; 3]; 3], hx: f64, hy: f64) -> Self {
        debug_assert!(hx > 0.0 && hy > 0.0);
        Self { u, hx, hy }
    }

    /// Builds the stencil from a function of the offsets (di, dj) ∈ {-1, 0, 1}².
    pub fn from_fn(hx: f64, hy: f64, mut f: impl FnMut(i32, i32) -> f64) -> Self {
        let mut u = [[0.0; 3]; 3];
        for (b, row) in u.iter_mut().enumerate() {
            for (a, v) in row.iter_mut().enumerate() {
                *v = f(a as i32 - 1, b as i32 - 1);
            }
        }
        Self { u, hx, hy }
    }

    #[inline]
    pub fn at(&self, di: i32, dj: i32) -> f64 {
        self.u[(dj + 1) as usize][(di + 1) as usize]
    }
}

/// One-sided planes in order NE, NW, SW, SE.
pub fn fit_corner_planes(s: &Stencil3x3) -> [Poly2D; 4] {
    let u0 = s.at(0, 0);
    let east = (s.at(1, 0) - u0) / s.hx;
    let west = (u0 - s.at(-1, 0)) / s.hx;
    let north = (s.at(0, 1) - u0) / s.hy;
    let south = (u0 - s.at(0, -1)) / s.hy;
    [
        Poly2D::plane(u0, east, north),
        Poly2D::plane(u0, west, north),
        Poly2D::plane(u0, west, south),
        Poly2D::plane(u0, east, south),
    ]
}

/// Discrete derivatives shared by the optimal and central polynomials:
/// (u_x, u_y, u_xx, u_yy, u_xy).
fn stencil_derivatives(s: &Stencil3x3) -> [f64; 5] {
    let u0 = s.at(0, 0);
    let ux = (s.at(1, 0) - s.at(-1, 0)) / (2.0 * s.hx);
    let uy = (s.at(0, 1) - s.at(0, -1)) / (2.0 * s.hy);
    let uxx = (s.at(1, 0) - 2.0 * u0 + s.at(-1, 0)) / (s.hx * s.hx);
    let uyy = (s.at(0, 1) - 2.0 * u0 + s.at(0, -1)) / (s.hy * s.hy);
    let uxy = (s.at(1, 1) + s.at(-1, -1) - s.at(1, -1) - s.at(-1, 1)) / (4.0 * s.hx * s.hy);
    [ux, uy, uxx, uyy, uxy]
}

/// Quadratic matching the nine-point stencil, conservative in cell (i, j).
pub fn fit_optimal_paraboloid(s: &Stencil3x3) -> Poly2D {
    let [ux, uy, uxx, uyy, uxy] = stencil_derivatives(s);
    Poly2D {
        c00: s.at(0, 0) - (s.hx * s.hx * uxx + s.hy * s.hy * uyy) / 24.0,
        c10: ux,
        c01: uy,
        c11: uxy,
        c20: 0.5 * uxx,
        c02: 0.5 * uyy,
    }
}

/// `P_C = 2·P_OPT − (P_NE + P_NW + P_SW + P_SE)/4`.
pub fn central_paraboloid(s: &Stencil3x3) -> Poly2D {
    let [ux, uy, uxx, uyy, uxy] = stencil_derivatives(s);
    Poly2D {
        c00: s.at(0, 0) - (s.hx * s.hx * uxx + s.hy * s.hy * uyy) / 12.0,
        c10: ux,
        c01: uy,
        c11: 2.0 * uxy,
        c20: uxx,
        c02: uyy,
    }
}

/// Indicator of a quadratic: Σ_α hx^{2a} hy^{2b} · mean over the cell of (D^α P)²,
/// summed over multi-indices α = (a, b) with |α| = 1, 2.
#[inline]
fn indicator(p: &Poly2D, hx: f64, hy: f64) -> f64 {
    let (hx2, hy2) = (hx * hx, hy * hy);
    let first_x = hx2 * (p.c10 * p.c10 + (p.c11 * p.c11 * hy2 + 4.0 * p.c20 * p.c20 * hx2) / 12.0);
    let first_y = hy2 * (p.c01 * p.c01 + (p.c11 * p.c11 * hx2 + 4.0 * p.c02 * p.c02 * hy2) / 12.0);
    let second = 4.0 * p.c20 * p.c20 * hx2 * hx2 + p.c11 * p.c11 * hx2 * hy2 + 4.0 * p.c02 * p.c02 * hy2 * hy2;
    first_x + first_y + second
}

/// Indicators (NE, NW, SW, SE, C). On square cells the planes give
/// `h²(slope_x² + slope_y²)` and the paraboloid adds
/// `(h⁴/12)[13 u_xx² + 14 u_xy² + 13 u_yy²]` with `u_xx = 2 c20`, `u_xy = c11`.
pub fn smoothness_indicators_2d(planes: &[Poly2D; 4], central: &Poly2D, hx: f64, hy: f64) -> [f64; 5] {
    let plane = |p: &Poly2D| hx * hx * p.c10 * p.c10 + hy * hy * p.c01 * p.c01;
    [
        plane(&planes[0]),
        plane(&planes[1]),
        plane(&planes[2]),
        plane(&planes[3]),
        indicator(central, hx, hy),
    ]
}

/// The five members and their indicators for one stencil.
pub fn members_and_indicators(s: &Stencil3x3) -> ([Poly2D; 5], [f64; 5]) {
    let planes = fit_corner_planes(s);
    let central = central_paraboloid(s);
    let is = smoothness_indicators_2d(&planes, &central, s.hx, s.hy);
    ([planes[0], planes[1], planes[2], planes[3], central], is)
}

pub fn combine_2d(members: &[Poly2D; 5], w: &[f64; 5]) -> Poly2D {
    members
        .iter()
        .zip(w)
        .fold(Poly2D::default(), |acc, (m, &wk)| acc + m.scaled(wk))
}

/// Nonlinear reconstruction `Σ w_k P_k` in cell (i, j).
pub fn reconstruct_cell_2d(s: &Stencil3x3, params: &CwenoParams) -> Poly2D {
    let (members, is) = members_and_indicators(s);
    combine_2d(&members, &nonlinear_weights(&is, &IDEAL_2D, params))
}

/// Exact mean of `p` over one quarter of its cell.
#[inline]
pub fn quarter_cell_average(p: &Poly2D, quadrant: Quadrant, hx: f64, hy: f64) -> f64 {
    let (sx, sy) = quadrant.signs();
    p.c00
        + p.c10 * sx * hx * 0.25
        + p.c01 * sy * hy * 0.25
        + p.c11 * sx * sy * hx * hy / 16.0
        + (p.c20 * hx * hx + p.c02 * hy * hy) / 12.0
}
