//! Synchronization thresholds, critical-radius searches, the limit-ratio table and the
//! ratio-profile sweeps behind the figures.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{self, sin_pi, Branch, FluxParameter, ModelParams};

/// Coupling `K` against its synchronization threshold for one `(alpha, theta_dot)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SyncReport {
    pub k_value: f64,
    pub k_critical: f64,
    pub synchronizes: bool,
    pub alpha: f64,
}

/// `K_critical = |omega_2 - omega_1| / 2 = |alpha theta_dot|` for mirrored paths.
pub fn critical_coupling(alpha: f64, theta_dot: f64) -> f64 {
    (alpha * theta_dot).abs()
}

/// `K = |theta_dot|/2 >= |alpha theta_dot|`, which holds iff `|alpha| <= 1/2`.
/// The boundary counts as synchronized.
pub fn synchronizes(alpha: f64, theta_dot: f64) -> Result<SyncReport> {
    if theta_dot == 0.0 {
        return Err(Error::domain("threshold undefined at zero angular velocity"));
    }
    if !(alpha.is_finite() && theta_dot.is_finite()) {
        return Err(Error::domain("alpha and theta_dot must be finite"));
    }
    Ok(SyncReport {
        k_value: model::coupling_strength(theta_dot).abs(),
        k_critical: critical_coupling(alpha, theta_dot),
        synchronizes: alpha.abs() <= 0.5,
        alpha,
    })
}

/// Threshold for two paths with independent positions and velocities.
pub fn critical_coupling_general(
    params: &ModelParams,
    th1: f64,
    th1_dot: f64,
    th2: f64,
    th2_dot: f64,
) -> Result<f64> {
    Branch::Upper.check(th1)?;
    Branch::Lower.check(th2)?;
    let ModelParams { alpha, rk } = *params;
    // Radius terms are combined first so that they cancel exactly on mirrored paths.
    let radius_terms = rk * (th1_dot * th1.sin() - th2_dot * th2.sin());
    let spread = alpha * (th2_dot - th1_dot) + radius_terms;
    Ok(0.5 * spread.abs())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneralSync {
    pub k1: f64,
    pub k2: f64,
    pub k_critical: f64,
    pub synchronizes: bool,
}

/// Both `K_1 = theta_1'/2` and `K_2 = -theta_2'/2` must reach the general threshold.
pub fn synchronizes_general(
    params: &ModelParams,
    th1: f64,
    th1_dot: f64,
    th2: f64,
    th2_dot: f64,
) -> Result<GeneralSync> {
    let k_critical = critical_coupling_general(params, th1, th1_dot, th2, th2_dot)?;
    let k1 = 0.5 * th1_dot;
    let k2 = -0.5 * th2_dot;
    Ok(GeneralSync { k1, k2, k_critical, synchronizes: k1 >= k_critical && k2 >= k_critical })
}

/// Closed-form and scanned critical `R k` for one `alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RcritResult {
    pub alpha: f64,
    pub rk_crit_closed_form: f64,
    pub rk_crit_scan: f64,
    pub scan_tolerance: f64,
}

fn check_rcrit_alpha(alpha: f64) -> Result<()> {
    if alpha == 0.0 {
        return Err(Error::domain("critical radius undefined at alpha = 0"));
    }
    if !(-1.0..0.0).contains(&alpha) {
        return Err(Error::domain(format!(
            "critical radius is defined for -1 <= alpha < 0, got {alpha}"
        )));
    }
    Ok(())
}

/// Critical `R k`: the `rk` at which the ratio profile's mean deviation from
/// the chord through its `theta = 0` and `theta = pi` values vanishes.
///
/// With `a = |alpha|` the deviation integral is
/// `D(rk) = -2 rk + sin^2(pi a)/(2a) - (pi/4) sin(2 pi a)`, linear in `rk`.
pub fn critical_rk_closed_form(alpha: f64) -> Result<f64> {
    check_rcrit_alpha(alpha)?;
    let a = alpha.abs();
    let s = sin_pi(a);
    Ok(0.5 * (s * s / (2.0 * a) - 0.25 * PI * sin_pi(2.0 * a)))
}

/// Panels used by [`critical_rk_scan`].
pub const CHORD_PANELS: usize = 4096;

/// `D(rk) = integral_0^pi [ratio_profile(theta) - chord(theta)] dtheta` by
/// composite Simpson. The endpoint `theta = pi` uses the profile's limit.
pub fn chord_deviation(alpha: f64, rk: f64, panels: usize) -> Result<f64> {
    let params = ModelParams::new(alpha, rk)?;
    let panels = panels.max(2) + panels % 2;
    let start = params.alpha;
    let end = model::limit_ratio(params.alpha);
    let h = PI / panels as f64;
    let deviation = |theta: f64, profile: f64| profile - (start + (end - start) * theta / PI);

    let mut acc = deviation(0.0, start) + deviation(PI, end);
    for i in 1..panels {
        let theta = i as f64 * h;
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * deviation(theta, model::ratio_profile_unchecked(&params, theta));
    }
    Ok(acc * h / 3.0)
}

/// Bisection for the root of `f` on `[lo, hi]` down to an interval width `tol`.
pub fn bisect<F>(mut f: F, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(lo < hi) || !(tol > 0.0) {
        return Err(Error::domain(format!("invalid bracket [{lo}, {hi}] or tolerance {tol}")));
    }
    let mut f_lo = f(lo)?;
    let f_hi = f(hi)?;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::Search(format!(
            "no sign change on [{lo}, {hi}]: f = {f_lo:e}, {f_hi:e}"
        )));
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Bisection on the chord-deviation integral; independent of the closed form.
pub fn critical_rk_scan(alpha: f64, rk_lo: f64, rk_hi: f64, tol: f64) -> Result<f64> {
    check_rcrit_alpha(alpha)?;
    if rk_lo < 0.0 {
        return Err(Error::domain("rk bracket must be nonnegative"));
    }
    bisect(|rk| chord_deviation(alpha, rk, CHORD_PANELS), rk_lo, rk_hi, tol)
}

pub fn rcrit(alpha: f64, rk_lo: f64, rk_hi: f64, tol: f64) -> Result<RcritResult> {
    Ok(RcritResult {
        alpha,
        rk_crit_closed_form: critical_rk_closed_form(alpha)?,
        rk_crit_scan: critical_rk_scan(alpha, rk_lo, rk_hi, tol)?,
        scan_tolerance: tol,
    })
}

/// Physical critical radius `sqrt(hbar/m) sqrt(1/2) |theta_dot0|^(-1/2)` for
/// `alpha = -1/2`.
pub fn rcrit_physical(theta_dot0: f64, hbar_over_m: f64) -> Result<f64> {
    if theta_dot0 == 0.0 || !theta_dot0.is_finite() {
        return Err(Error::domain("theta_dot0 must be finite and nonzero"));
    }
    if !(hbar_over_m > 0.0 && hbar_over_m.is_finite()) {
        return Err(Error::domain("hbar/m must be positive"));
    }
    Ok(hbar_over_m.sqrt() * 0.5f64.sqrt() / theta_dot0.abs().sqrt())
}

/// One row of the limit-ratio table (`l = -1`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub alpha: f64,
    pub n: i64,
    pub element: &'static str,
    /// Limit ratio rounded to `decimals` places.
    pub ratio: f64,
    pub decimals: usize,
    pub ab_effect: bool,
}

impl TableRow {
    /// Ratio as printed in the table.
    pub fn ratio_text(&self) -> String {
        format!("{:.*}", self.decimals, self.ratio)
    }
}

/// `(n, element, printed decimals)`; a few rows are printed with fewer digits.
const TABLE_ONE: [(i64, &str, usize); 13] = [
    (1, "H", 1),
    (2, "He", 1),
    (3, "Li", 1),
    (4, "Be", 3),
    (5, "B", 3),
    (6, "C", 3),
    (7, "N", 3),
    (8, "O", 3),
    (9, "F", 2),
    (10, "Ne", 3),
    (11, "Na", 3),
    (12, "Mg", 3),
    (118, "Og", 3),
];

fn round_to(x: f64, decimals: usize) -> f64 {
    format!("{x:.decimals$}").parse().expect("formatted float parses")
}

pub fn table_one() -> Vec<TableRow> {
    TABLE_ONE
        .iter()
        .map(|&(n, element, decimals)| {
            let flux = FluxParameter::new(-1, n).expect("table rows have nonzero n");
            let alpha = flux.alpha();
            TableRow {
                alpha,
                n,
                element,
                ratio: round_to(model::limit_ratio(alpha), decimals),
                decimals,
                ab_effect: flux.is_detectable(),
            }
        })
        .collect()
}

/// `Rk` values of the 13-curve figure family.
pub const FAMILY_RK: [f64; 13] =
    [0.0001, 0.02, 0.04, 0.1, 0.2, 0.3, 0.4, 0.45, 0.5, 0.55, 0.6, 0.7, 1.0];

/// `Rk` values bracketing the critical radius at `alpha = -1/3`.
pub const CRITICAL_RK: [f64; 5] = [0.18, 0.2, 0.22, 0.24, 0.26];

/// Angles `start_deg, start_deg + step_deg, ...` up to and including `stop_deg`, in degrees.
pub fn degree_grid(start_deg: f64, stop_deg: f64, step_deg: f64) -> Result<Vec<f64>> {
    if !(step_deg > 0.0) || !(start_deg <= stop_deg) || !stop_deg.is_finite() {
        return Err(Error::domain(format!(
            "invalid theta grid {start_deg}..{stop_deg} step {step_deg}"
        )));
    }
    let count = ((stop_deg - start_deg) / step_deg + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| start_deg + i as f64 * step_deg).collect())
}

/// Default figure grid, 0..=179 degrees in 1 degree steps, in radians.
pub fn default_theta_grid() -> Vec<f64> {
    degree_grid(0.0, 179.0, 1.0)
        .expect("static grid is valid")
        .into_iter()
        .map(f64::to_radians)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileSweep {
    pub alpha: f64,
    pub rk_values: Vec<f64>,
    pub theta_grid: Vec<f64>,
    /// `values[i][j]` is the ratio profile at `rk_values[i]`, `theta_grid[j]`.
    pub values: Vec<Vec<f64>>,
}

pub fn profile_sweep(alpha: f64, rk_values: &[f64], theta_grid: &[f64]) -> Result<ProfileSweep> {
    if rk_values.is_empty() || theta_grid.is_empty() {
        return Err(Error::domain("profile sweep needs nonempty rk and theta grids"));
    }
    for &theta in theta_grid {
        Branch::Upper.check(theta)?;
    }
    let values = rk_values
        .iter()
        .map(|&rk| {
            let params = ModelParams::new(alpha, rk)?;
            Ok(theta_grid
                .iter()
                .map(|&theta| model::ratio_profile_unchecked(&params, theta))
                .collect())
        })
        .collect::<Result<_>>()?;
    Ok(ProfileSweep {
        alpha,
        rk_values: rk_values.to_vec(),
        theta_grid: theta_grid.to_vec(),
        values,
    })
}
