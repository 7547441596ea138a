//! Ground-truth 1-D quadrotor dynamics, the inaccurate prior model, and the
//! analytic flatness transformations used for simulation, data labeling,
//! and oracle testing.
//!
//! The plant is `ẍ = Γ sin(θ) − γ ẋ`, `θ̇ = (u − θ)/τ` with commanded pitch
//! `u`. It is flat in the output `y = x` with flat state `z = [x, ẋ, ẍ]`
//! and flat input `v = x⃛`. Differentiating the acceleration once in time
//! gives the control-affine input map
//!
//! ```text
//! v = α(z) + β(z)·u,   α(z) = −(Γ cos θ)·θ/τ − γ·z₃,   β(z) = Γ cos θ / τ,
//! ```
//!
//! with `θ = asin((z₃ + γ z₂)/Γ)`.

use nalgebra::Vector3;
use thiserror::Error;

/// Flat state `[x, ẋ, ẍ]`.
pub type FlatState = Vector3<f64>;

#[derive(Debug, Error)]
pub enum PlantError {
    #[error("integration produced a non-finite state")]
    NonFinite,
    #[error("pitch recovery out of domain: |z3 + gamma*z2| = {0} exceeds Gamma = {1}")]
    PitchDomain(f64, f64),
    #[error("input map singular near |theta| = pi/2 (cos(theta) = {0})")]
    Singular(f64),
    #[error("invalid plant parameters: {0}")]
    BadParams(&'static str),
}

/// Physical parameters: thrust gain Γ (m/s² per unit sin-pitch), drag γ
/// (1/s), and pitch time constant τ (s).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlantParams {
    pub thrust_gain: f64,
    pub drag: f64,
    pub pitch_tau: f64,
}

impl PlantParams {
    pub fn new(thrust_gain: f64, drag: f64, pitch_tau: f64) -> Result<Self, PlantError> {
        if !(thrust_gain > 0.0) {
            return Err(PlantError::BadParams("thrust_gain must be positive"));
        }
        if !(pitch_tau > 0.0) {
            return Err(PlantError::BadParams("pitch_tau must be positive"));
        }
        if !(drag >= 0.0) {
            return Err(PlantError::BadParams("drag must be nonnegative"));
        }
        Ok(PlantParams { thrust_gain, drag, pitch_tau })
    }

    /// True simulation parameters.
    pub fn truth() -> Self {
        PlantParams { thrust_gain: 10.0, drag: 0.3, pitch_tau: 0.2 }
    }

    /// Inaccurate prior model: over-estimated thrust, no drag, fast pitch.
    pub fn prior() -> Self {
        PlantParams { thrust_gain: 20.0, drag: 0.0, pitch_tau: 0.05 }
    }
}

/// Physical state: position (m), velocity (m/s), pitch angle (rad).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysState {
    pub x: f64,
    pub xdot: f64,
    pub theta: f64,
}

impl PhysState {
    pub fn new(x: f64, xdot: f64, theta: f64) -> Self {
        PhysState { x, xdot, theta }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.xdot.is_finite() && self.theta.is_finite()
    }
}

fn deriv(s: &PhysState, u: f64, p: &PlantParams) -> PhysState {
    PhysState {
        x: s.xdot,
        xdot: p.thrust_gain * s.theta.sin() - p.drag * s.xdot,
        theta: (u - s.theta) / p.pitch_tau,
    }
}

fn axpy(s: &PhysState, h: f64, d: &PhysState) -> PhysState {
    PhysState {
        x: s.x + h * d.x,
        xdot: s.xdot + h * d.xdot,
        theta: s.theta + h * d.theta,
    }
}

/// Advance the true plant by `dt` seconds under a zero-order-hold input,
/// with one classical 4th-order Runge-Kutta step.
pub fn step_truth(
    s: &PhysState,
    u: f64,
    dt: f64,
    p: &PlantParams,
) -> Result<PhysState, PlantError> {
    debug_assert!(dt > 0.0);
    let k1 = deriv(s, u, p);
    let k2 = deriv(&axpy(s, 0.5 * dt, &k1), u, p);
    let k3 = deriv(&axpy(s, 0.5 * dt, &k2), u, p);
    let k4 = deriv(&axpy(s, dt, &k3), u, p);
    let next = PhysState {
        x: s.x + dt / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x),
        xdot: s.xdot + dt / 6.0 * (k1.xdot + 2.0 * k2.xdot + 2.0 * k3.xdot + k4.xdot),
        theta: s.theta + dt / 6.0 * (k1.theta + 2.0 * k2.theta + 2.0 * k3.theta + k4.theta),
    };
    if next.is_finite() {
        Ok(next)
    } else {
        Err(PlantError::NonFinite)
    }
}

/// Exact flat state of a physical state: `z = [x, ẋ, Γ sin θ − γ ẋ]`.
pub fn phys_to_flat(s: &PhysState, p: &PlantParams) -> FlatState {
    Vector3::new(
        s.x,
        s.xdot,
        p.thrust_gain * s.theta.sin() - p.drag * s.xdot,
    )
}

/// The flat input map for one parameter set. Constructed from either the
/// true or the prior parameters; all transformations go through this.
#[derive(Debug, Clone, Copy)]
pub struct FlatModel {
    pub params: PlantParams,
}

impl FlatModel {
    pub fn new(params: PlantParams) -> Self {
        FlatModel { params }
    }

    pub fn truth() -> Self {
        FlatModel::new(PlantParams::truth())
    }

    pub fn prior() -> Self {
        FlatModel::new(PlantParams::prior())
    }

    fn asin_arg(&self, z: &FlatState) -> f64 {
        (z[2] + self.params.drag * z[1]) / self.params.thrust_gain
    }

    /// Pitch angle consistent with a flat state. Errors outside the arcsin
    /// domain.
    pub fn pitch(&self, z: &FlatState) -> Result<f64, PlantError> {
        let arg = self.asin_arg(z);
        if arg.abs() > 1.0 {
            return Err(PlantError::PitchDomain(
                (z[2] + self.params.drag * z[1]).abs(),
                self.params.thrust_gain,
            ));
        }
        Ok(arg.asin())
    }

    /// Pitch recovery with the arcsin argument clamped into
    /// `[-1+1e-9, 1-1e-9]`. The flag reports whether clamping occurred so
    /// episode logs can count transient overshoots instead of aborting.
    pub fn pitch_clamped(&self, z: &FlatState) -> (f64, bool) {
        let arg = self.asin_arg(z);
        let lim = 1.0 - 1e-9;
        if arg.abs() <= lim {
            (arg.asin(), false)
        } else {
            (arg.clamp(-lim, lim).asin(), true)
        }
    }

    /// The affine decomposition `v = α(z) + β(z)u`.
    pub fn alpha_beta(&self, z: &FlatState) -> Result<(f64, f64), PlantError> {
        let theta = self.pitch(z)?;
        let c = self.params.thrust_gain * theta.cos();
        let alpha = -c * theta / self.params.pitch_tau - self.params.drag * z[2];
        let beta = c / self.params.pitch_tau;
        Ok((alpha, beta))
    }

    /// Forward input map `v = ψ(z, u)`.
    pub fn psi(&self, z: &FlatState, u: f64) -> Result<f64, PlantError> {
        let (alpha, beta) = self.alpha_beta(z)?;
        Ok(alpha + beta * u)
    }

    /// Inverse input map `u = ψ⁻¹(z, v)`. Errors near `|θ| = π/2` where
    /// `β(z)` vanishes.
    pub fn psi_inverse(&self, z: &FlatState, v: f64) -> Result<f64, PlantError> {
        let (alpha, beta) = self.alpha_beta(z)?;
        if beta.abs() < 1e-9 {
            return Err(PlantError::Singular(beta * self.params.pitch_tau / self.params.thrust_gain));
        }
        Ok((v - alpha) / beta)
    }

    /// Inverse map with a clamped pitch recovery, for in-episode use.
    pub fn psi_inverse_clamped(&self, z: &FlatState, v: f64) -> (f64, bool) {
        let (theta, clamped) = self.pitch_clamped(z);
        let c = self.params.thrust_gain * theta.cos();
        let alpha = -c * theta / self.params.pitch_tau - self.params.drag * z[2];
        let beta = (c / self.params.pitch_tau).max(1e-9);
        ((v - alpha) / beta, clamped)
    }
}
