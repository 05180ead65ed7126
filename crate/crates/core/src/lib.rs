//! Kuramoto phase-oscillator model of the bound-state Aharonov-Bohm effect.
//!
//! Two electrons leave `theta = 0` on opposite halves of a ring threaded by
//! a flux tube and meet at `theta = pi`. Their phases obey
//!
//! ```text
//! Theta_i' = omega_i + (K/N) sum_j sin(Theta_j - Theta_i)
//! omega_i  = (alpha - Rk sin(theta_i)) theta_i'     (incident wave)
//! K        = theta_i' / 2                            (scattered wave)
//! ```
//!
//! Modules:
//! - [`model`]: flux parameter, frequencies and closed-form profiles.
//! - [`dynamics`]: right-hand sides and the fixed-step RK4 integrator.
//! - [`analysis`]: synchronization thresholds, critical radius, the limit-ratio table, sweeps.
//! - [`wavefunction`]: incident and scattered waves, phase-rate oracle, units.

#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x > 0.0)` deliberately rejects NaN

pub mod analysis;
pub mod dynamics;
pub mod error;
pub mod model;
pub mod wavefunction;

pub use error::{Error, Result};
pub use model::{Branch, FluxParameter, ModelParams};
