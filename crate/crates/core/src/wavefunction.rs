//! Incident and scattered waves of the bound-state problem, the phase-rate
//! oracle for the natural frequency, and the bridge to physical units.
//!
//! ```text
//! psi_inc   = exp(-i (alpha theta + rk cos theta))
//! psi_scatt = sin(pi alpha) / (sqrt(2 pi rk) cos(theta/2)) * exp(-i (theta/2 - rk + pi/4))
//! ```
//!
//! The `1/sqrt(i)` factor of the scattered wave is carried as the `pi/4`
//! phase offset; its modulus is one.

use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dynamics::Trajectory;
use crate::error::{Error, Result};
use crate::model::{sin_pi, ModelParams};

pub type ComplexAmp = Complex64;

fn check_open_circle(theta: f64) -> Result<()> {
    if !(theta.abs() < PI) {
        return Err(Error::domain(format!("theta = {theta} outside (-pi, pi)")));
    }
    Ok(())
}

/// Phase `alpha theta + rk cos theta` accumulated by the incident wave; its
/// time derivative is the natural frequency.
pub fn incident_phase(params: &ModelParams, theta: f64) -> f64 {
    params.alpha * theta + params.rk * theta.cos()
}

/// Phase `theta/2 - rk + pi/4` of the scattered wave; its time derivative is
/// the coupling strength.
pub fn scattered_phase(params: &ModelParams, theta: f64) -> f64 {
    0.5 * theta - params.rk + FRAC_PI_4
}

pub fn psi_inc(params: &ModelParams, theta: f64) -> Result<ComplexAmp> {
    check_open_circle(theta)?;
    Ok(Complex64::from_polar(1.0, -incident_phase(params, theta)))
}

/// Signed real prefactor `B` of the scattered wave.
pub fn scattered_amplitude(params: &ModelParams, theta: f64) -> Result<f64> {
    if theta.abs() >= PI {
        return Err(Error::Singularity(format!(
            "scattered wave diverges on the interference line (theta = {theta})"
        )));
    }
    if theta.is_nan() {
        return Err(Error::domain("theta is NaN"));
    }
    if !(params.rk > 0.0) {
        return Err(Error::domain("scattered wave requires rk > 0"));
    }
    Ok(sin_pi(params.alpha) / ((2.0 * PI * params.rk).sqrt() * (0.5 * theta).cos()))
}

pub fn psi_scatt(params: &ModelParams, theta: f64) -> Result<ComplexAmp> {
    let b = scattered_amplitude(params, theta)?;
    Ok(Complex64::from_polar(1.0, -scattered_phase(params, theta)) * b)
}

pub fn psi_total(params: &ModelParams, theta: f64) -> Result<ComplexAmp> {
    Ok(psi_inc(params, theta)? + psi_scatt(params, theta)?)
}

/// Central difference of the incident-wave phase along `traj` at time `t`.
///
/// The phase step is taken as `arg(psi(t+dt) conj(psi(t-dt)))`, which is
/// unambiguous while the phase moves by less than `pi` across `2 dt`.
pub fn phase_rate_oracle(params: &ModelParams, traj: &Trajectory, t: f64, dt: f64) -> Result<f64> {
    if !(dt > 0.0) {
        return Err(Error::domain("dt must be positive"));
    }
    let max_rate = (params.alpha.abs() + params.rk) * traj.theta_dot.abs();
    if 2.0 * dt * max_rate >= PI {
        return Err(Error::domain(format!(
            "step too large: phase may move by {} over 2 dt, unwrap is ambiguous",
            2.0 * dt * max_rate
        )));
    }
    let ahead = psi_inc(params, traj.theta_at(t + dt))?;
    let behind = psi_inc(params, traj.theta_at(t - dt))?;
    // psi_inc = exp(-i phase), so the phase advance is minus the argument.
    Ok(-(ahead * behind.conj()).arg() / (2.0 * dt))
}

/// `hbar` and the particle mass; natural units by default.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    pub hbar: f64,
    pub m0: f64,
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self { hbar: 1.0, m0: 1.0 }
    }
}

impl PhysicalConstants {
    /// CODATA reduced Planck constant and electron mass, SI.
    pub const SI_ELECTRON: Self = Self { hbar: 1.054_571_817e-34, m0: 9.109_383_701_5e-31 };

    pub fn new(hbar: f64, m0: f64) -> Result<Self> {
        if !(hbar > 0.0 && m0 > 0.0 && hbar.is_finite() && m0.is_finite()) {
            return Err(Error::domain("hbar and m0 must be positive"));
        }
        Ok(Self { hbar, m0 })
    }

    pub fn hbar_over_m(&self) -> f64 {
        self.hbar / self.m0
    }
}

/// Wave number `k = 2 pi / lambda_0 = m0 R |theta_dot0| / hbar`.
pub fn de_broglie_k(consts: &PhysicalConstants, radius: f64, theta_dot0: f64) -> Result<f64> {
    if !(radius > 0.0) {
        return Err(Error::domain(format!("orbit radius must be positive, got {radius}")));
    }
    if theta_dot0 == 0.0 || !theta_dot0.is_finite() {
        return Err(Error::domain("theta_dot0 must be finite and nonzero"));
    }
    Ok(consts.m0 * radius * theta_dot0.abs() / consts.hbar)
}

/// Outcome of comparing the orbit radius with the solenoid radius.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum OrbitCheck {
    Ok,
    /// `R < 100 R0`; the field-free assumption is doubtful.
    TooClose { ratio: f64 },
}

pub fn check_orbit(radius: f64, solenoid_radius: f64) -> Result<OrbitCheck> {
    if !(radius > 0.0 && solenoid_radius > 0.0) {
        return Err(Error::domain("radii must be positive"));
    }
    let ratio = radius / solenoid_radius;
    Ok(if ratio >= 100.0 { OrbitCheck::Ok } else { OrbitCheck::TooClose { ratio } })
}

/// `V_AB = alpha theta_dot` and `omega_inc = (1 - k y / alpha) V_AB` with `y = R sin theta`.
pub fn ab_potential(alpha: f64, theta_dot: f64, y: f64, k: f64) -> Result<(f64, f64)> {
    if alpha == 0.0 {
        return Err(Error::domain("alpha must be nonzero"));
    }
    let v_ab = alpha * theta_dot;
    Ok((v_ab, (1.0 - k * y / alpha) * v_ab))
}
