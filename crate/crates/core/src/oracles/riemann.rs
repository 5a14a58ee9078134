//! Exact solution of the Riemann problem for the 1D Euler equations
//! (ideal gas), iterating on the star pressure with Newton's method.

use crate::error::{CwenoError, Result};
use crate::models::EulerState;

/// Primitive state (ρ, u, p).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Primitive {
    pub rho: f64,
    pub u: f64,
    pub p: f64,
}

impl Primitive {
    pub fn from_conserved(s: &EulerState) -> Self {
        Self {
            rho: s.rho,
            u: s.velocity(),
            p: s.pressure(),
        }
    }

    pub fn to_conserved(self, gamma: f64) -> EulerState {
        EulerState::from_primitive(self.rho, self.u, self.p, gamma)
    }

    fn sound_speed(&self, gamma: f64) -> f64 {
        (gamma * self.p / self.rho).sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiemannSolution {
    pub left: Primitive,
    pub right: Primitive,
    pub gamma: f64,
    pub p_star: f64,
    pub u_star: f64,
}

/// Pressure function f_K(p) and its derivative for one side.
fn pressure_function(p: f64, side: &Primitive, gamma: f64) -> (f64, f64) {
    let c = side.sound_speed(gamma);
    if p > side.p {
        // shock
        let a = 2.0 / ((gamma + 1.0) * side.rho);
        let b = (gamma - 1.0) / (gamma + 1.0) * side.p;
        let q = (a / (p + b)).sqrt();
        let f = (p - side.p) * q;
        let df = q * (1.0 - 0.5 * (p - side.p) / (b + p));
        (f, df)
    } else {
        // rarefaction
        let ratio = p / side.p;
        let e = (gamma - 1.0) / (2.0 * gamma);
        let f = 2.0 * c / (gamma - 1.0) * (ratio.powf(e) - 1.0);
        let df = ratio.powf(-(gamma + 1.0) / (2.0 * gamma)) / (side.rho * c);
        (f, df)
    }
}

impl RiemannSolution {
    pub fn solve(left: &EulerState, right: &EulerState) -> Result<Self> {
        let gamma = left.gamma;
        for s in [left, right] {
            s.check().map_err(|(quantity, value)| CwenoError::Inadmissible {
                cell: 0,
                quantity,
                value,
            })?;
        }
        let (l, r) = (Primitive::from_conserved(left), Primitive::from_conserved(right));
        let (cl, cr) = (l.sound_speed(gamma), r.sound_speed(gamma));
        let du = r.u - l.u;
        if 2.0 / (gamma - 1.0) * (cl + cr) <= du {
            return Err(CwenoError::Vacuum);
        }
        // primitive-variable guess, floored away from zero
        let pvrs = 0.5 * (l.p + r.p) - 0.125 * du * (l.rho + r.rho) * (cl + cr);
        let mut p = pvrs.max(1e-8 * (l.p + r.p));
        let mut converged = false;
        for _ in 0..100 {
            let (fl, dfl) = pressure_function(p, &l, gamma);
            let (fr, dfr) = pressure_function(p, &r, gamma);
            let mut next = p - (fl + fr + du) / (dfl + dfr);
            if next <= 0.0 {
                next = 0.5 * p;
            }
            let change = 2.0 * (next - p).abs() / (next + p);
            p = next;
            if change < 1e-14 {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(CwenoError::NoConvergence("star pressure".into()));
        }
        let (fl, _) = pressure_function(p, &l, gamma);
        let (fr, _) = pressure_function(p, &r, gamma);
        Ok(Self {
            left: l,
            right: r,
            gamma,
            p_star: p,
            u_star: 0.5 * (l.u + r.u) + 0.5 * (fr - fl),
        })
    }

    /// f_L(p*) + f_R(p*) + (u_R − u_L); zero at the exact star pressure.
    pub fn wave_residual(&self) -> f64 {
        let (fl, _) = pressure_function(self.p_star, &self.left, self.gamma);
        let (fr, _) = pressure_function(self.p_star, &self.right, self.gamma);
        fl + fr + self.right.u - self.left.u
    }

    /// Density on each side of the contact.
    pub fn star_densities(&self) -> (f64, f64) {
        let g = self.gamma;
        let star = |s: &Primitive| {
            let ratio = self.p_star / s.p;
            if self.p_star > s.p {
                let k = (g - 1.0) / (g + 1.0);
                s.rho * (ratio + k) / (k * ratio + 1.0)
            } else {
                s.rho * ratio.powf(1.0 / g)
            }
        };
        (star(&self.left), star(&self.right))
    }

    /// Shock speeds (left, right) where the corresponding wave is a shock.
    pub fn shock_speeds(&self) -> (Option<f64>, Option<f64>) {
        let g = self.gamma;
        let speed = |s: &Primitive, sign: f64| {
            let c = s.sound_speed(g);
            s.u + sign * c * ((g + 1.0) / (2.0 * g) * self.p_star / s.p + (g - 1.0) / (2.0 * g)).sqrt()
        };
        (
            (self.p_star > self.left.p).then(|| speed(&self.left, -1.0)),
            (self.p_star > self.right.p).then(|| speed(&self.right, 1.0)),
        )
    }

    /// Characteristic speeds bounding the fans (head, tail) per side; shocks report
    /// the shock speed twice.
    pub fn wave_speeds(&self) -> [f64; 5] {
        let g = self.gamma;
        let (shock_l, shock_r) = self.shock_speeds();
        let (rho_sl, rho_sr) = self.star_densities();
        let (cl, cr) = (self.left.sound_speed(g), self.right.sound_speed(g));
        let c_sl = (g * self.p_star / rho_sl).sqrt();
        let c_sr = (g * self.p_star / rho_sr).sqrt();
        let (l_head, l_tail) = match shock_l {
            Some(s) => (s, s),
            None => (self.left.u - cl, self.u_star - c_sl),
        };
        let (r_tail, r_head) = match shock_r {
            Some(s) => (s, s),
            None => (self.u_star + c_sr, self.right.u + cr),
        };
        [l_head, l_tail, self.u_star, r_tail, r_head]
    }

    /// Primitive state at similarity coordinate ξ = x/t.
    pub fn sample_primitive(&self, xi: f64) -> Primitive {
        let g = self.gamma;
        let (rho_sl, rho_sr) = self.star_densities();
        if xi <= self.u_star {
            let s = &self.left;
            let c = s.sound_speed(g);
            if self.p_star > s.p {
                let shock = self.shock_speeds().0.unwrap_or(f64::NEG_INFINITY);
                if xi <= shock {
                    *s
                } else {
                    Primitive { rho: rho_sl, u: self.u_star, p: self.p_star }
                }
            } else {
                let head = s.u - c;
                let tail = self.u_star - c * (self.p_star / s.p).powf((g - 1.0) / (2.0 * g));
                if xi <= head {
                    *s
                } else if xi >= tail {
                    Primitive { rho: rho_sl, u: self.u_star, p: self.p_star }
                } else {
                    let k = 2.0 / (g + 1.0) + (g - 1.0) / ((g + 1.0) * c) * (s.u - xi);
                    Primitive {
                        rho: s.rho * k.powf(2.0 / (g - 1.0)),
                        u: 2.0 / (g + 1.0) * (c + 0.5 * (g - 1.0) * s.u + xi),
                        p: s.p * k.powf(2.0 * g / (g - 1.0)),
                    }
                }
            }
        } else {
            let s = &self.right;
            let c = s.sound_speed(g);
            if self.p_star > s.p {
                let shock = self.shock_speeds().1.unwrap_or(f64::INFINITY);
                if xi >= shock {
                    *s
                } else {
                    Primitive { rho: rho_sr, u: self.u_star, p: self.p_star }
                }
            } else {
                let head = s.u + c;
                let tail = self.u_star + c * (self.p_star / s.p).powf((g - 1.0) / (2.0 * g));
                if xi >= head {
                    *s
                } else if xi <= tail {
                    Primitive { rho: rho_sr, u: self.u_star, p: self.p_star }
                } else {
                    let k = 2.0 / (g + 1.0) - (g - 1.0) / ((g + 1.0) * c) * (s.u - xi);
                    Primitive {
                        rho: s.rho * k.powf(2.0 / (g - 1.0)),
                        u: 2.0 / (g + 1.0) * (-c + 0.5 * (g - 1.0) * s.u + xi),
                        p: s.p * k.powf(2.0 * g / (g - 1.0)),
                    }
                }
            }
        }
    }

    pub fn sample(&self, xi: f64) -> EulerState {
        self.sample_primitive(xi).to_conserved(self.gamma)
    }
}
