//! Learning-based trajectory tracking for differentially flat systems.
//!
//! The controller runs two convex programs per tick: a condensed flat MPC
//! over the discretized integrator chain picks the desired flat input, and
//! a second-order cone program refines it into a plant input through a
//! Gaussian-process model of the nonlinear input map, enforcing a Lyapunov
//! decrease condition and tightened flat-state constraints with high
//! probability.
//!
//! Modules:
//! - [`plant`]: ground-truth 1-D quadrotor, its inaccurate prior model, and
//!   the analytic flatness transformations.
//! - [`gp`]: GP regression of the flat input map with a control-affine
//!   kernel; closed-form coefficients make the posterior mean affine and
//!   the variance quadratic in the input.
//! - [`fmpc`]: condensed finite-horizon flat MPC, equivalent unconstrained
//!   gain, and the discrete algebraic Riccati equation.
//! - [`socp`]: small dense second-order cone solver with infeasibility
//!   detection.
//! - [`filter`]: the per-tick SOCP safety filter.
//! - [`harness`]: references, training-data collection, episode execution,
//!   baseline controllers, metrics, and configuration.

pub mod filter;
pub mod fmpc;
pub mod gp;
pub mod harness;
pub mod plant;
pub mod socp;
