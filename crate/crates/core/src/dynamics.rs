//! Phase dynamics on prescribed circular trajectories.
//!
//! Positions `theta_i(t) = theta0_i + theta_dot_i * t` are kinematic; only the
//! oscillator phases are integrated. Four right-hand sides are provided:
//!
//! ```text
//! mirrored / general (N = 2):
//!   Theta_1' = [alpha - rk sin(theta_1) + 1/2 sin(Theta_2 - Theta_1)] theta_1'
//!   Theta_2' = [alpha - rk sin(theta_2) - 1/2 sin(Theta_2 - Theta_1)] theta_2'
//! all-to-all:
//!   Theta_i' = [alpha - rk sin(theta_i) + 1/N sum_j sin(Theta_j - Theta_i)] theta_i'
//! half-phase (vartheta_i = Theta_i / 2):
//!   vartheta_i' = 1/2 [alpha - rk sin(theta_i) + 1/N sum_j sin(vartheta_j - vartheta_i)] theta_i'
//! ```

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Branch, ModelParams};

/// Name of the mirrored-run diagnostic `|(Theta_2 - Theta_1) + 2 alpha theta_1|`.
pub const PHASE_DIFF_RESIDUAL: &str = "phase_diff_residual";

/// Constant-velocity angular motion along the ring.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub theta0: f64,
    pub theta_dot: f64,
    pub theta_max: f64,
}

impl Trajectory {
    pub fn new(theta0: f64, theta_dot: f64) -> Result<Self> {
        Self::with_cutoff(theta0, theta_dot, PI)
    }

    pub fn with_cutoff(theta0: f64, theta_dot: f64, theta_max: f64) -> Result<Self> {
        if !(theta0.is_finite() && theta_dot.is_finite()) {
            return Err(Error::domain("trajectory parameters must be finite"));
        }
        if !(theta_max > 0.0 && theta_max <= PI) {
            return Err(Error::domain(format!("theta_max must lie in (0, pi], got {theta_max}")));
        }
        if theta0.abs() >= theta_max {
            return Err(Error::domain(format!(
                "|theta0| = {} must be below theta_max = {theta_max}",
                theta0.abs()
            )));
        }
        Ok(Self { theta0, theta_dot, theta_max })
    }

    /// Path 1 of the two-path setup: starts at 0, counter-clockwise.
    pub fn path1(theta_dot: f64) -> Result<Self> {
        if theta_dot < 0.0 {
            return Err(Error::domain("Path 1 requires theta_dot >= 0"));
        }
        Self::new(0.0, theta_dot)
    }

    /// Mirror image through the x-axis (`theta -> -theta`).
    pub fn mirrored(&self) -> Self {
        Self { theta0: -self.theta0, theta_dot: -self.theta_dot, theta_max: self.theta_max }
    }

    pub fn theta_at(&self, t: f64) -> f64 {
        self.theta0 + self.theta_dot * t
    }

    /// Time at which `|theta|` reaches `theta_max - margin`, or `None` if the
    /// path never gets there.
    pub fn time_to_cutoff(&self, margin: f64) -> Option<f64> {
        let limit = self.theta_max - margin;
        if self.theta_dot > 0.0 {
            Some((limit - self.theta0) / self.theta_dot)
        } else if self.theta_dot < 0.0 {
            Some((limit + self.theta0) / -self.theta_dot)
        } else {
            None
        }
    }
}

/// Oscillator phases and angular positions at one instant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleState {
    pub t: f64,
    pub thetas: Vec<f64>,
    pub phases: Vec<f64>,
}

impl EnsembleState {
    pub fn new(t: f64, thetas: Vec<f64>, phases: Vec<f64>) -> Result<Self> {
        if thetas.len() != phases.len() {
            return Err(Error::contract(format!(
                "{} positions but {} phases",
                thetas.len(),
                phases.len()
            )));
        }
        if thetas.len() < 2 {
            return Err(Error::contract("an ensemble needs at least two oscillators"));
        }
        Ok(Self { t, thetas, phases })
    }

    /// State at `t = 0` on the given trajectories with every phase zero.
    pub fn at_start(trajs: &[Trajectory]) -> Result<Self> {
        Self::new(0.0, trajs.iter().map(|tr| tr.theta0).collect(), vec![0.0; trajs.len()])
    }

    /// State at `t = 0` with explicit initial phases.
    pub fn at_start_with_phases(trajs: &[Trajectory], phases: Vec<f64>) -> Result<Self> {
        Self::new(0.0, trajs.iter().map(|tr| tr.theta0).collect(), phases)
    }

    pub fn len(&self) -> usize {
        self.phases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phases.is_empty()
    }
}

/// Right-hand side selector for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Model {
    Mirrored,
    General,
    AllToAll,
    HalfPhase,
}

impl Model {
    pub fn rates(
        self,
        params: &ModelParams,
        state: &EnsembleState,
        trajs: &[Trajectory],
    ) -> Result<Vec<f64>> {
        let mut out = vec![0.0; state.len()];
        self.rates_into(params, &state.thetas, &state.phases, trajs, &mut out)?;
        Ok(out)
    }

    /// Validates the configuration once, before any stepping.
    fn check_setup(self, trajs: &[Trajectory]) -> Result<()> {
        match self {
            Model::Mirrored => {
                check_two(trajs)?;
                check_mirror(&trajs[0], &trajs[1])
            }
            Model::General => check_two(trajs),
            Model::AllToAll | Model::HalfPhase => Ok(()),
        }
    }

    fn rates_into(
        self,
        params: &ModelParams,
        thetas: &[f64],
        phases: &[f64],
        trajs: &[Trajectory],
        out: &mut [f64],
    ) -> Result<()> {
        if trajs.len() != phases.len() || thetas.len() != phases.len() {
            return Err(Error::contract(format!(
                "state has {} oscillators but {} trajectories were given",
                phases.len(),
                trajs.len()
            )));
        }
        match self {
            Model::Mirrored | Model::General => {
                check_two(trajs)?;
                check_two_path_positions(thetas)?;
                let dots = [trajs[0].theta_dot, trajs[1].theta_dot];
                let [a, b] = two_path_rates(params, [thetas[0], thetas[1]], [phases[0], phases[1]], dots);
                out[0] = a;
                out[1] = b;
            }
            Model::AllToAll => all_to_all_rates(params, thetas, phases, trajs, 1.0, out)?,
            Model::HalfPhase => all_to_all_rates(params, thetas, phases, trajs, 0.5, out)?,
        }
        Ok(())
    }
}

fn check_two(trajs: &[Trajectory]) -> Result<()> {
    if trajs.len() != 2 {
        return Err(Error::contract(format!(
            "two-path model needs exactly 2 oscillators, got {}",
            trajs.len()
        )));
    }
    Ok(())
}

fn check_mirror(t1: &Trajectory, t2: &Trajectory) -> Result<()> {
    if t2.theta0 != -t1.theta0 || t2.theta_dot != -t1.theta_dot {
        return Err(Error::contract("Path 2 trajectory is not the mirror image of Path 1"));
    }
    Ok(())
}

fn check_two_path_positions(thetas: &[f64]) -> Result<()> {
    Branch::Upper
        .check(thetas[0])
        .map_err(|e| Error::domain(format!("oscillator 1: {e}")))?;
    Branch::Lower
        .check(thetas[1])
        .map_err(|e| Error::domain(format!("oscillator 2: {e}")))
}

fn two_path_rates(params: &ModelParams, thetas: [f64; 2], phases: [f64; 2], dots: [f64; 2]) -> [f64; 2] {
    let half_coupling = 0.5 * (phases[1] - phases[0]).sin();
    [
        (params.alpha - params.rk * thetas[0].sin() + half_coupling) * dots[0],
        (params.alpha - params.rk * thetas[1].sin() - half_coupling) * dots[1],
    ]
}

fn all_to_all_rates(
    params: &ModelParams,
    thetas: &[f64],
    phases: &[f64],
    trajs: &[Trajectory],
    prefactor: f64,
    out: &mut [f64],
) -> Result<()> {
    let n = phases.len();
    if n < 2 {
        return Err(Error::contract("an ensemble needs at least two oscillators"));
    }
    for (i, &th) in thetas.iter().enumerate() {
        if !(th.abs() < PI) {
            return Err(Error::domain(format!("oscillator {}: theta = {th} outside (-pi, pi)", i + 1)));
        }
    }
    let inv_n = 1.0 / n as f64;
    for i in 0..n {
        let coupling: f64 = phases.iter().map(|&pj| (pj - phases[i]).sin()).sum();
        out[i] = prefactor
            * (params.alpha - params.rk * thetas[i].sin() + inv_n * coupling)
            * trajs[i].theta_dot;
    }
    Ok(())
}

/// Rates of the mirrored two-path system. `traj2` must be the mirror image
/// of `traj1`.
pub fn rhs_two_mirrored(
    params: &ModelParams,
    state: &EnsembleState,
    traj1: &Trajectory,
    traj2: &Trajectory,
) -> Result<[f64; 2]> {
    check_mirror(traj1, traj2)?;
    let r = Model::Mirrored.rates(params, state, &[*traj1, *traj2])?;
    Ok([r[0], r[1]])
}

/// Rates of the two-path system with independent `(theta_i, theta_dot_i)`.
pub fn rhs_general_two(
    params: &ModelParams,
    state: &EnsembleState,
    trajs: &[Trajectory],
) -> Result<[f64; 2]> {
    let r = Model::General.rates(params, state, trajs)?;
    Ok([r[0], r[1]])
}

pub fn rhs_n(params: &ModelParams, state: &EnsembleState, trajs: &[Trajectory]) -> Result<Vec<f64>> {
    Model::AllToAll.rates(params, state, trajs)
}

/// Half-phase variant; `state.phases` hold `vartheta_i = Theta_i / 2`.
pub fn rhs_half_phase(
    params: &ModelParams,
    state: &EnsembleState,
    trajs: &[Trajectory],
) -> Result<Vec<f64>> {
    Model::HalfPhase.rates(params, state, trajs)
}

/// Kuramoto order parameter `r e^{i psi} = (1/N) sum_j e^{i Theta_j}`,
/// with `psi` in `(-pi, pi]`.
pub fn order_parameter(phases: &[f64]) -> (f64, f64) {
    if phases.is_empty() {
        return (0.0, 0.0);
    }
    let (re, im) = phases
        .iter()
        .fold((0.0, 0.0), |(re, im), &p| (re + p.cos(), im + p.sin()));
    let inv_n = 1.0 / phases.len() as f64;
    let (re, im) = (re * inv_n, im * inv_n);
    let r = re.hypot(im).min(1.0);
    let mut psi = im.atan2(re);
    if psi == -PI {
        psi = PI;
    }
    (r, psi)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    /// Classical fixed-step fourth-order Runge-Kutta.
    Rk4,
}

const MAX_STEPS: f64 = 1e8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegratorConfig {
    pub dt: f64,
    pub t_end: f64,
    pub method: Method,
    pub record_every: usize,
    /// Integration stops once some `|theta_i|` reaches `theta_max - margin`.
    pub margin: f64,
}

impl IntegratorConfig {
    pub fn new(dt: f64, t_end: f64) -> Result<Self> {
        let cfg = Self { dt, t_end, method: Method::Rk4, record_every: 1, margin: 1e-6 };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Default step `1e-4 * pi / |theta_dot|`, running until the cutoff.
    pub fn for_velocity(theta_dot: f64) -> Result<Self> {
        if theta_dot == 0.0 || !theta_dot.is_finite() {
            return Err(Error::domain("default step needs a finite nonzero angular velocity"));
        }
        let period = PI / theta_dot.abs();
        Self::new(1e-4 * period, period)
    }

    pub fn record_every(mut self, stride: usize) -> Result<Self> {
        self.record_every = stride;
        self.validate()?;
        Ok(self)
    }

    pub fn margin(mut self, margin: f64) -> Result<Self> {
        self.margin = margin;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::domain(format!("dt must be positive, got {}", self.dt)));
        }
        if !(self.t_end > 0.0 && self.t_end.is_finite()) {
            return Err(Error::domain(format!("t_end must be positive, got {}", self.t_end)));
        }
        if self.t_end / self.dt > MAX_STEPS {
            return Err(Error::domain(format!(
                "t_end/dt = {:e} exceeds the step limit {MAX_STEPS:e}",
                self.t_end / self.dt
            )));
        }
        if self.record_every == 0 {
            return Err(Error::domain("record_every must be >= 1"));
        }
        if !(self.margin >= 0.0 && self.margin < PI) {
            return Err(Error::domain(format!("margin must lie in [0, pi), got {}", self.margin)));
        }
        Ok(())
    }
}

/// Sampled run with per-sample invariant residuals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeSeries {
    pub model: Model,
    pub samples: Vec<EnsembleState>,
    pub diagnostics: Vec<BTreeMap<String, f64>>,
}

impl TimeSeries {
    pub fn last(&self) -> &EnsembleState {
        self.samples.last().expect("a time series always holds the initial sample")
    }

    /// Largest value of a named diagnostic over the run.
    pub fn max_diagnostic(&self, name: &str) -> Option<f64> {
        self.diagnostics
            .iter()
            .filter_map(|d| d.get(name).copied())
            .reduce(f64::max)
    }
}

/// Advances the phases with fixed-step RK4 while the positions follow their
/// trajectories exactly. Stops at `t_end` or when the first `|theta_i|`
/// reaches `theta_max - margin`; the final step is shortened to land there.
pub fn integrate(
    model: Model,
    params: &ModelParams,
    initial: &EnsembleState,
    trajs: &[Trajectory],
    config: &IntegratorConfig,
) -> Result<TimeSeries> {
    config.validate()?;
    model.check_setup(trajs)?;
    if trajs.len() != initial.len() {
        return Err(Error::contract(format!(
            "state has {} oscillators but {} trajectories were given",
            initial.len(),
            trajs.len()
        )));
    }
    if initial.t != 0.0 {
        return Err(Error::contract("integration starts at t = 0"));
    }
    for (i, (tr, &th)) in trajs.iter().zip(&initial.thetas).enumerate() {
        if th != tr.theta0 {
            return Err(Error::contract(format!(
                "oscillator {}: initial theta {th} disagrees with trajectory start {}",
                i + 1,
                tr.theta0
            )));
        }
    }

    let mut t_stop = config.t_end;
    for (i, tr) in trajs.iter().enumerate() {
        if let Some(tc) = tr.time_to_cutoff(config.margin) {
            if tc <= 0.0 {
                return Err(Error::domain(format!(
                    "oscillator {} starts within the cutoff margin of theta_max",
                    i + 1
                )));
            }
            t_stop = t_stop.min(tc);
        }
    }

    let n = initial.len();
    let full_steps = (t_stop / config.dt).floor() as u64;
    let remainder = t_stop - full_steps as f64 * config.dt;
    let partial = remainder > 1e-9 * config.dt;
    let total_steps = full_steps + u64::from(partial);

    let thetas_at = |t: f64, buf: &mut Vec<f64>| {
        buf.clear();
        buf.extend(trajs.iter().map(|tr| tr.theta_at(t)));
    };

    let mirrored_ref = (model == Model::Mirrored)
        .then(|| (initial.phases[1] - initial.phases[0], initial.thetas[0]));
    let diagnose = |state: &EnsembleState| {
        let mut d = BTreeMap::new();
        if let Some((dphi0, th0)) = mirrored_ref {
            let dphi = state.phases[1] - state.phases[0] - dphi0;
            let residual = (dphi + 2.0 * params.alpha * (state.thetas[0] - th0)).abs();
            d.insert(PHASE_DIFF_RESIDUAL.to_string(), residual);
        }
        d
    };

    let mut samples = vec![initial.clone()];
    let mut diagnostics = vec![diagnose(initial)];

    let mut phases = initial.phases.clone();
    let mut k = [vec![0.0; n], vec![0.0; n], vec![0.0; n], vec![0.0; n]];
    let mut stage = vec![0.0; n];
    let mut th = Vec::with_capacity(n);

    for step in 1..=total_steps {
        let t0 = (step - 1) as f64 * config.dt;
        let t1 = if step > full_steps { t_stop } else { step as f64 * config.dt };
        let h = t1 - t0;

        thetas_at(t0, &mut th);
        model.rates_into(params, &th, &phases, trajs, &mut k[0])?;
        thetas_at(t0 + 0.5 * h, &mut th);
        for i in 0..n {
            stage[i] = phases[i] + 0.5 * h * k[0][i];
        }
        model.rates_into(params, &th, &stage, trajs, &mut k[1])?;
        for i in 0..n {
            stage[i] = phases[i] + 0.5 * h * k[1][i];
        }
        model.rates_into(params, &th, &stage, trajs, &mut k[2])?;
        thetas_at(t1, &mut th);
        for i in 0..n {
            stage[i] = phases[i] + h * k[2][i];
        }
        model.rates_into(params, &th, &stage, trajs, &mut k[3])?;
        for i in 0..n {
            phases[i] += h / 6.0 * (k[0][i] + 2.0 * k[1][i] + 2.0 * k[2][i] + k[3][i]);
        }
        if phases.iter().any(|p| !p.is_finite()) {
            return Err(Error::Numerical { t: t1, msg: "non-finite phase".into() });
        }

        if step % config.record_every as u64 == 0 || step == total_steps {
            let state = EnsembleState { t: t1, thetas: th.clone(), phases: phases.clone() };
            diagnostics.push(diagnose(&state));
            samples.push(state);
        }
    }

    Ok(TimeSeries { model, samples, diagnostics })
}
