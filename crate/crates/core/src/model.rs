//! Closed-form quantities of the two-path oscillator model.
//!
//! Everything here is a pure function of the flux parameter `alpha`, the
//! dimensionless orbit size `rk = R·k` and an angular position `theta`
//! (radians). Phase rates are reported per unit angular velocity where a
//! `theta_dot` argument is absent.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `sin(pi * x)`, returning an exact zero at integer `x`.
pub fn sin_pi(x: f64) -> f64 {
    if x == x.trunc() {
        return 0.0;
    }
    // fmod is exact, so the reduction loses nothing.
    (PI * (x % 2.0)).sin()
}

/// `cos(pi * x)`, exact at integer and half-integer `x`.
pub fn cos_pi(x: f64) -> f64 {
    let r = x.abs() % 2.0;
    if r == 0.0 {
        1.0
    } else if r == 1.0 {
        -1.0
    } else if r == 0.5 || r == 1.5 {
        0.0
    } else {
        (PI * r).cos()
    }
}

/// Flux parameter `alpha = l / n` built from the detector charge multiple `l`
/// and the source charge multiple `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FluxParameter {
    l: i64,
    n: i64,
}

impl FluxParameter {
    pub fn new(l: i64, n: i64) -> Result<Self> {
        if l == 0 || n == 0 {
            return Err(Error::domain("charge multiple must be nonzero"));
        }
        Ok(Self { l, n })
    }

    pub fn l(&self) -> i64 {
        self.l
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn alpha(&self) -> f64 {
        self.l as f64 / self.n as f64
    }

    /// The phase shift is observable only when `l/n` has a nonzero
    /// fractional part. Decided on the integers, never on `alpha`.
    pub fn is_detectable(&self) -> bool {
        !self.l.unsigned_abs().is_multiple_of(self.n.unsigned_abs())
    }
}

pub fn flux_alpha(l: i64, n: i64) -> Result<f64> {
    FluxParameter::new(l, n).map(|f| f.alpha())
}

pub fn is_detectable(l: i64, n: i64) -> Result<bool> {
    FluxParameter::new(l, n).map(|f| f.is_detectable())
}

/// The `(alpha, Rk)` pair that fixes the oscillator equations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub alpha: f64,
    pub rk: f64,
}

impl ModelParams {
    pub fn new(alpha: f64, rk: f64) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(Error::domain(format!("alpha must be finite, got {alpha}")));
        }
        if !(rk.is_finite() && rk >= 0.0) {
            return Err(Error::domain(format!("rk must be finite and >= 0, got {rk}")));
        }
        Ok(Self { alpha, rk })
    }
}

/// Which half of the ring a path runs along.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    /// Path 1, counter-clockwise: `0 <= theta < pi`.
    Upper,
    /// Path 2, clockwise: `-pi < theta <= 0`.
    Lower,
}

impl Branch {
    pub fn contains(self, theta: f64) -> bool {
        match self {
            Branch::Upper => (0.0..PI).contains(&theta),
            Branch::Lower => theta > -PI && theta <= 0.0,
        }
    }

    pub(crate) fn check(self, theta: f64) -> Result<()> {
        if self.contains(theta) {
            Ok(())
        } else {
            let range = match self {
                Branch::Upper => "[0, pi)",
                Branch::Lower => "(-pi, 0]",
            };
            Err(Error::domain(format!(
                "theta = {theta} outside the {self:?} branch {range}"
            )))
        }
    }
}

/// Uncoupled phase rate `(alpha - rk sin(theta)) * theta_dot`, i.e. the
/// time derivative of the incident-wave phase along the path.
pub fn natural_frequency(params: &ModelParams, theta: f64, theta_dot: f64) -> f64 {
    (params.alpha - params.rk * theta.sin()) * theta_dot
}

/// Coupling strength `K = theta_dot / 2`, the rate of the scattered-wave phase.
pub fn coupling_strength(theta_dot: f64) -> f64 {
    0.5 * theta_dot
}

/// Exact phase difference `Theta_2 - Theta_1` of the mirrored two-path system
/// when the paths sit at `theta` on the given branch.
pub fn analytic_phase_difference(alpha: f64, theta: f64, branch: Branch) -> Result<f64> {
    branch.check(theta)?;
    Ok(match branch {
        Branch::Upper => -2.0 * theta * alpha,
        Branch::Lower => 2.0 * theta * alpha,
    })
}

/// `Theta_1' / theta'` along Path 1 with the exact phase difference
/// substituted into the coupling term.
pub fn ratio_profile(params: &ModelParams, theta: f64) -> Result<f64> {
    Branch::Upper.check(theta)?;
    Ok(ratio_profile_unchecked(params, theta))
}

/// As [`ratio_profile`], evaluated on Path 2's own coordinate.
pub fn ratio_profile_lower(params: &ModelParams, theta: f64) -> Result<f64> {
    Branch::Lower.check(theta)?;
    Ok(ratio_profile_unchecked(params, theta))
}

pub(crate) fn ratio_profile_unchecked(params: &ModelParams, theta: f64) -> f64 {
    // The two theta-dependent terms are summed first: at alpha = -1/2 they
    // are bitwise negatives when rk = 1/2.
    let oscillating = 0.5 * (-2.0 * theta * params.alpha).sin() - params.rk * theta.sin();
    params.alpha + oscillating
}

/// Limit of the Path 1 ratio profile as `theta -> pi`: `alpha - sin(2 pi alpha)/2`.
pub fn limit_ratio(alpha: f64) -> f64 {
    alpha - 0.5 * sin_pi(2.0 * alpha)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn flux_alpha_values() {
        assert_eq!(flux_alpha(-1, 2).unwrap(), -0.5);
        assert_eq!(flux_alpha(-1, 1).unwrap(), -1.0);
        assert_eq!(flux_alpha(2, 2).unwrap(), 1.0);
    }

    #[test]
    fn zero_charge_multiple_is_rejected() {
        for (l, n) in [(0, 3), (2, 0), (0, 0)] {
            let err = flux_alpha(l, n).unwrap_err();
            assert!(err.to_string().contains("charge multiple must be nonzero"));
            assert!(is_detectable(l, n).is_err());
        }
    }

    #[test]
    fn detectability() {
        assert!(!is_detectable(-1, 1).unwrap());
        assert!(is_detectable(-1, 2).unwrap());
        assert!(!is_detectable(-3, 3).unwrap());
        assert!(!is_detectable(4, -2).unwrap());
        assert!(is_detectable(3, -2).unwrap());
        assert!(!is_detectable(i64::MIN, 1).unwrap());
    }

    #[test]
    fn model_params_validation() {
        assert!(ModelParams::new(-0.5, -1e-3).is_err());
        assert!(ModelParams::new(f64::NAN, 0.1).is_err());
        assert!(ModelParams::new(-0.5, f64::INFINITY).is_err());
        assert!(ModelParams::new(-0.5, 0.0).is_ok());
    }

    #[test]
    fn natural_frequency_examples() {
        let p = ModelParams::new(-0.5, 0.0).unwrap();
        assert_eq!(natural_frequency(&p, 1.2, 1.0), -0.5);
        let p = ModelParams::new(-0.5, 0.5).unwrap();
        assert_eq!(natural_frequency(&p, 0.0, 3.0), -1.5);
        assert_abs_diff_eq!(natural_frequency(&p, FRAC_PI_2, 1.0), -1.0, epsilon = 1e-15);
    }

    #[test]
    fn natural_frequency_reflection() {
        let p = ModelParams::new(-0.3, 0.7).unwrap();
        for &(th, thd) in &[(0.4, 1.3), (2.9, -0.2), (-1.1, 4.0)] {
            let lhs = natural_frequency(&p, -th, -thd);
            let rhs = (p.alpha + p.rk * f64::sin(th)) * (-thd);
            assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-15);
        }
    }

    #[test]
    fn coupling_strength_examples() {
        assert_eq!(coupling_strength(1.0), 0.5);
        assert_eq!(coupling_strength(0.0), 0.0);
        assert_eq!(coupling_strength(-2.0), -1.0);
    }

    #[test]
    fn phase_difference_examples() {
        let d = analytic_phase_difference(-0.5, PI - 1e-9, Branch::Upper).unwrap();
        assert_abs_diff_eq!(d, PI * (1.0 - 1e-9 / PI), epsilon = 1e-15);
        assert_eq!(analytic_phase_difference(0.7, 0.0, Branch::Upper).unwrap(), 0.0);
        assert_eq!(analytic_phase_difference(0.7, 0.0, Branch::Lower).unwrap(), 0.0);
        let d = analytic_phase_difference(-1.0 / 3.0, FRAC_PI_2, Branch::Upper).unwrap();
        assert_abs_diff_eq!(d, PI / 3.0, epsilon = 1e-15);
        // Lower branch mirrors the upper one.
        let d = analytic_phase_difference(-1.0 / 3.0, -FRAC_PI_2, Branch::Lower).unwrap();
        assert_abs_diff_eq!(d, PI / 3.0, epsilon = 1e-15);
    }

    #[test]
    fn phase_difference_domain() {
        assert!(analytic_phase_difference(-0.5, PI, Branch::Upper).is_err());
        assert!(analytic_phase_difference(-0.5, -0.1, Branch::Upper).is_err());
        assert!(analytic_phase_difference(-0.5, 0.1, Branch::Lower).is_err());
        assert!(analytic_phase_difference(-0.5, -PI, Branch::Lower).is_err());
    }

    #[test]
    fn ratio_profile_examples() {
        let p = ModelParams::new(-0.5, 1.0).unwrap();
        assert_abs_diff_eq!(ratio_profile(&p, FRAC_PI_2).unwrap(), -1.0, epsilon = 1e-15);

        let p = ModelParams::new(-0.5, 0.5).unwrap();
        for i in 0..1000 {
            let th = PI * i as f64 / 1000.0;
            assert_eq!(ratio_profile(&p, th).unwrap(), -0.5);
        }

        let p = ModelParams::new(-1.0 / 3.0, 0.0).unwrap();
        assert_eq!(ratio_profile(&p, 0.0).unwrap(), -1.0 / 3.0);
    }

    #[test]
    fn ratio_profile_domain() {
        let p = ModelParams::new(-0.5, 0.3).unwrap();
        assert!(ratio_profile(&p, PI).is_err());
        assert!(ratio_profile(&p, -0.2).is_err());
        assert!(ratio_profile_lower(&p, 0.2).is_err());
        assert!(ratio_profile_lower(&p, -0.2).is_ok());
    }

    #[test]
    fn ratio_profile_at_zero_is_alpha() {
        for &a in &[-1.0, -0.5, -0.2, 0.3] {
            for &rk in &[0.0, 0.5, 3.0] {
                let p = ModelParams::new(a, rk).unwrap();
                assert_eq!(ratio_profile(&p, 0.0).unwrap(), a);
            }
        }
    }

    #[test]
    fn limit_ratio_examples() {
        assert_eq!(limit_ratio(-0.5), -0.5);
        assert_eq!(limit_ratio(-1.0), -1.0);
        assert_eq!(format!("{:.3}", limit_ratio(-0.2)), "0.276");
        assert_eq!(limit_ratio(0.0), 0.0);
    }

    #[test]
    fn sin_pi_cos_pi() {
        for k in -6..=6 {
            assert_eq!(sin_pi(k as f64), 0.0);
        }
        assert_eq!(sin_pi(0.5), 1.0);
        assert_eq!(sin_pi(-0.5), -1.0);
        assert_abs_diff_eq!(sin_pi(1.0 / 3.0), (PI / 3.0).sin(), epsilon = 1e-15);
        assert_abs_diff_eq!(sin_pi(7.25), (PI * 7.25).sin(), epsilon = 1e-14);
        assert_eq!(cos_pi(1.0), -1.0);
        assert_eq!(cos_pi(-2.0), 1.0);
        assert_eq!(cos_pi(0.5), 0.0);
        assert_abs_diff_eq!(cos_pi(2.0 / 3.0), -0.5, epsilon = 1e-15);
    }
}
