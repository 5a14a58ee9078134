//! Compact third-order CWENO reconstruction in one dimension.
//!
//! Each cell combines two one-sided linear polynomials and a central parabola.
//! With the ideal constants (1/4, 1/2, 1/4) the combination is the parabola
//! matching the averages of the cells j-1, j, j+1; near a jump the nonlinear
//! weights collapse onto the smoother one-sided line.
//!
//! Member order everywhere in this module is (left, center, right).

use crate::error::{CwenoError, Result};

/// Ideal constants (C_L, C_C, C_R).
pub const IDEAL_1D: [f64; 3] = [0.25, 0.5, 0.25];

/// Quadratic about a cell center: `a0 + a1·X + a2·X²`, `X = x - x_j`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Poly1D {
    pub a0: f64,
    pub a1: f64,
    pub a2: f64,
}

impl Poly1D {
    pub const fn new(a0: f64, a1: f64, a2: f64) -> Self {
        Self { a0, a1, a2 }
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.a0 + x * (self.a1 + x * self.a2)
    }

    pub fn derivative(&self, x: f64) -> f64 {
        self.a1 + 2.0 * self.a2 * x
    }

    /// Exact mean over `[lo, hi]` in local coordinates.
    pub fn mean_over(&self, lo: f64, hi: f64) -> f64 {
        let m1 = 0.5 * (lo + hi);
        let m2 = (lo * lo + lo * hi + hi * hi) / 3.0;
        self.a0 + self.a1 * m1 + self.a2 * m2
    }

    /// Mean over the whole cell of width `h`.
    pub fn cell_mean(&self, h: f64) -> f64 {
        self.a0 + self.a2 * h * h / 12.0
    }

    pub fn coefficients(&self) -> [f64; 3] {
        [self.a0, self.a1, self.a2]
    }

    fn scaled(self, w: f64) -> Self {
        Self::new(w * self.a0, w * self.a1, w * self.a2)
    }
}

impl std::ops::Add for Poly1D {
    type Output = Poly1D;

    fn add(self, o: Poly1D) -> Poly1D {
        Poly1D::new(self.a0 + o.a0, self.a1 + o.a1, self.a2 + o.a2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// How the convex-combination weights are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightMode {
    /// `w_i = α_i / Σα`, `α_i = C_i / (ε + IS_i)^p`.
    Nonlinear,
    /// Weights frozen at the ideal constants (linear scheme).
    Ideal,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CwenoParams {
    pub epsilon: f64,
    pub p: u32,
    pub mode: WeightMode,
}

impl Default for CwenoParams {
    fn default() -> Self {
        Self {
            epsilon: 1e-2,
            p: 2,
            mode: WeightMode::Nonlinear,
        }
    }
}

impl CwenoParams {
    pub fn new(epsilon: f64, p: u32) -> Result<Self> {
        let params = Self {
            epsilon,
            p,
            mode: WeightMode::Nonlinear,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn ideal() -> Self {
        Self {
            mode: WeightMode::Ideal,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(CwenoError::InvalidParameter(format!(
                "epsilon must be positive, got {}",
                self.epsilon
            )));
        }
        if self.p == 0 {
            return Err(CwenoError::InvalidParameter("p must be at least 1".into()));
        }
        Ok(())
    }
}

/// Indicators, constants and resulting weights for one cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightSet {
    pub is_values: [f64; 3],
    pub ideal: [f64; 3],
    pub weights: [f64; 3],
}

impl WeightSet {
    pub fn compute(is_values: [f64; 3], params: &CwenoParams) -> Self {
        Self {
            is_values,
            ideal: IDEAL_1D,
            weights: nonlinear_weights(&is_values, &IDEAL_1D, params),
        }
    }
}

fn check_h(h: f64) -> Result<()> {
    if h > 0.0 && h.is_finite() {
        Ok(())
    } else {
        Err(CwenoError::NonPositiveWidth(h))
    }
}

/// Parabola whose averages over cells j-1, j, j+1 are the three inputs.
pub fn fit_optimal_parabola(u_m1: f64, u_0: f64, u_p1: f64, h: f64) -> Result<Poly1D> {
    check_h(h)?;
    let d2 = u_p1 - 2.0 * u_0 + u_m1;
    Ok(Poly1D::new(
        u_0 - d2 / 24.0,
        (u_p1 - u_m1) / (2.0 * h),
        d2 / (2.0 * h * h),
    ))
}

/// One-sided line through the averages of cell j and its neighbor on `side`.
/// `u_far` is ū_{j+1} for [`Side::Right`] and ū_{j-1} for [`Side::Left`].
pub fn fit_one_sided_linear(u_near: f64, u_far: f64, side: Side, h: f64) -> Result<Poly1D> {
    check_h(h)?;
    let slope = match side {
        Side::Right => (u_far - u_near) / h,
        Side::Left => (u_near - u_far) / h,
    };
    Ok(Poly1D::new(u_near, slope, 0.0))
}

/// `P_C = 2·P_OPT − (P_L + P_R)/2`.
pub fn central_parabola(u_m1: f64, u_0: f64, u_p1: f64, h: f64) -> Result<Poly1D> {
    check_h(h)?;
    let d2 = u_p1 - 2.0 * u_0 + u_m1;
    Ok(Poly1D::new(
        u_0 - d2 / 12.0,
        (u_p1 - u_m1) / (2.0 * h),
        d2 / (h * h),
    ))
}

/// Closed-form indicators (IS_L, IS_C, IS_R). They do not depend on `h`.
#[inline]
pub fn smoothness_indicators_1d(u_m1: f64, u_0: f64, u_p1: f64) -> [f64; 3] {
    let dl = u_0 - u_m1;
    let dr = u_p1 - u_0;
    let d2 = u_p1 - 2.0 * u_0 + u_m1;
    let dc = u_p1 - u_m1;
    [dl * dl, 13.0 / 3.0 * d2 * d2 + 0.25 * dc * dc, dr * dr]
}

/// Normalized weights `α_i / Σα`. Works for any member count (3 in 1D, 5 in 2D).
#[inline]
pub fn nonlinear_weights<const N: usize>(is_values: &[f64; N], ideal: &[f64; N], params: &CwenoParams) -> [f64; N] {
    if params.mode == WeightMode::Ideal {
        return *ideal;
    }
    let mut alpha = [0.0; N];
    let mut total = 0.0;
    for k in 0..N {
        alpha[k] = ideal[k] * (1.0 / (params.epsilon + is_values[k])).powi(params.p as i32);
        total += alpha[k];
    }
    for a in alpha.iter_mut() {
        *a /= total;
    }
    alpha
}

/// Weighted combination of the three members for given weights `w = (w_L, w_C, w_R)`.
#[inline]
pub fn combine_1d(u_m1: f64, u_0: f64, u_p1: f64, h: f64, w: &[f64; 3]) -> Poly1D {
    let d2 = u_p1 - 2.0 * u_0 + u_m1;
    let s_l = (u_0 - u_m1) / h;
    let s_r = (u_p1 - u_0) / h;
    let s_c = (u_p1 - u_m1) / (2.0 * h);
    Poly1D::new(
        u_0 - w[1] * d2 / 12.0,
        w[0] * s_l + w[1] * s_c + w[2] * s_r,
        w[1] * d2 / (h * h),
    )
}

/// Nonlinear reconstruction `Σ w_i P_i` in cell j.
pub fn reconstruct_cell(u_m1: f64, u_0: f64, u_p1: f64, h: f64, params: &CwenoParams) -> Result<Poly1D> {
    check_h(h)?;
    let ws = WeightSet::compute(smoothness_indicators_1d(u_m1, u_0, u_p1), params);
    Ok(combine_1d(u_m1, u_0, u_p1, h, &ws.weights))
}

/// Reference implementation of the combination through the member polynomials.
pub fn combine_members(u_m1: f64, u_0: f64, u_p1: f64, h: f64, w: &[f64; 3]) -> Result<Poly1D> {
    let left = fit_one_sided_linear(u_0, u_m1, Side::Left, h)?;
    let center = central_parabola(u_m1, u_0, u_p1, h)?;
    let right = fit_one_sided_linear(u_0, u_p1, Side::Right, h)?;
    Ok(left.scaled(w[0]) + center.scaled(w[1]) + right.scaled(w[2]))
}

/// Average over the staggered cell `[x_j, x_{j+1}]` assembled from the right
/// half of cell j and the left half of cell j+1.
#[inline]
pub fn staggered_half_averages(poly_j: &Poly1D, poly_jp1: &Poly1D, h: f64) -> f64 {
    // mean of X over a half cell is ±h/4, mean of X² is h²/12
    0.5 * ((poly_j.a0 + poly_jp1.a0)
        + 0.25 * h * (poly_j.a1 - poly_jp1.a1)
        + h * h / 12.0 * (poly_j.a2 + poly_jp1.a2))
}

/// Weighted slope combination for point data with weights `w`.
#[inline]
pub fn derivative_with_weights(f_m1: f64, f_0: f64, f_p1: f64, h: f64, w: &[f64; 3]) -> f64 {
    let s_l = (f_0 - f_m1) / h;
    let s_r = (f_p1 - f_0) / h;
    let s_c = (f_p1 - f_m1) / (2.0 * h);
    w[0] * s_l + w[1] * s_c + w[2] * s_r
}

/// Non-oscillatory ∂f/∂x at the center of cell j from point values.
pub fn derivative_at_center(f_m1: f64, f_0: f64, f_p1: f64, h: f64, params: &CwenoParams) -> Result<f64> {
    check_h(h)?;
    let w = nonlinear_weights(&smoothness_indicators_1d(f_m1, f_0, f_p1), &IDEAL_1D, params);
    Ok(derivative_with_weights(f_m1, f_0, f_p1, h, &w))
}
