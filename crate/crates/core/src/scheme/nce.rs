//! Kutta's three-stage method with its quadratic natural continuous extension.

use crate::error::{CwenoError, Result};

/// Explicit three-stage tableau plus dense-output polynomials
/// `b_i(θ) = β_i θ + γ_i θ²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NceTableau {
    pub c: [f64; 3],
    pub b: [f64; 3],
    /// Stage couplings `a21`, `a31`, `a32`.
    pub a: [f64; 3],
    linear: [f64; 3],
    quadratic: [f64; 3],
}

impl NceTableau {
    pub const KUTTA3: Self = Self {
        c: [0.0, 0.5, 1.0],
        b: [1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0],
        a: [0.5, -1.0, 2.0],
        linear: [1.0, 0.0, 0.0],
        quadratic: [-5.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0],
    };

    /// `(b_1(θ), b_2(θ), b_3(θ))`.
    pub fn weights(&self, theta: f64) -> [f64; 3] {
        let mut out = [0.0; 3];
        for k in 0..3 {
            out[k] = theta * (self.linear[k] + theta * self.quadratic[k]);
        }
        out
    }
}

impl Default for NceTableau {
    fn default() -> Self {
        Self::KUTTA3
    }
}

/// Predicted states at θ = 0, ½ and 1 of one step.
#[derive(Debug, Clone, PartialEq)]
pub struct PredictorState {
    pub initial: Vec<f64>,
    pub half: Vec<f64>,
    pub full: Vec<f64>,
}

impl PredictorState {
    pub fn levels(&self) -> [&[f64]; 3] {
        [&self.initial, &self.half, &self.full]
    }
}

/// Weights of Simpson's rule on θ ∈ {0, ½, 1}.
pub const SIMPSON: [f64; 3] = [1.0 / 6.0, 4.0 / 6.0, 1.0 / 6.0];

/// Runs the three stages from `u0` and evaluates the extension at θ = ½, 1.
/// `rhs(u, out)` writes `du/dt`.
pub fn nce_predict(
    u0: &[f64],
    mut rhs: impl FnMut(&[f64], &mut [f64]) -> Result<()>,
    dt: f64,
) -> Result<PredictorState> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(CwenoError::InvalidParameter(format!("time step must be positive, got {dt}")));
    }
    let tab = NceTableau::KUTTA3;
    let n = u0.len();
    let mut k1 = vec![0.0; n];
    let mut k2 = vec![0.0; n];
    let mut k3 = vec![0.0; n];
    let mut stage = vec![0.0; n];

    rhs(u0, &mut k1)?;
    check_stage(&k1)?;
    for i in 0..n {
        stage[i] = u0[i] + dt * tab.a[0] * k1[i];
    }
    rhs(&stage, &mut k2)?;
    check_stage(&k2)?;
    for i in 0..n {
        stage[i] = u0[i] + dt * (tab.a[1] * k1[i] + tab.a[2] * k2[i]);
    }
    rhs(&stage, &mut k3)?;
    check_stage(&k3)?;

    let level = |theta: f64| {
        let b = tab.weights(theta);
        (0..n)
            .map(|i| u0[i] + dt * (b[0] * k1[i] + b[1] * k2[i] + b[2] * k3[i]))
            .collect::<Vec<_>>()
    };
    Ok(PredictorState {
        initial: u0.to_vec(),
        half: level(0.5),
        full: level(1.0),
    })
}

fn check_stage(k: &[f64]) -> Result<()> {
    match k.iter().position(|v| !v.is_finite()) {
        Some(i) => Err(CwenoError::NonFinite { cell: i, component: 0 }),
        None => Ok(()),
    }
}
