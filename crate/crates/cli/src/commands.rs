use std::f64::consts::PI;

use ab_kuramoto::analysis::{self, CRITICAL_RK, FAMILY_RK};
use ab_kuramoto::dynamics::{
    integrate, order_parameter, EnsembleState, IntegratorConfig, Model, Trajectory,
    PHASE_DIFF_RESIDUAL,
};
use ab_kuramoto::wavefunction;
use ab_kuramoto::ModelParams;

use crate::args::{ModelKind, ProfileArgs, RcritArgs, RcritMode, RkPreset, SimulateArgs, SyncArgs, WavefunctionArgs};
use crate::config::{parse_list, parse_real, Settings};
use crate::error::{CliError, CliResult};
use crate::output::{AngleUnit, Cell, Format, Table};

/// A command's result before it is serialized.
pub struct Report {
    pub table: Table,
    pub header: String,
    /// Emit a bare JSON object instead of a one-element array.
    pub single: bool,
    pub default_format: Format,
}

pub const COMMON_KEYS: [&str; 4] = ["out", "format", "angle-unit", "no-header"];

fn required(settings: &Settings, flag: Option<&str>, key: &str) -> CliResult<f64> {
    let text = settings
        .pick(flag, key)
        .ok_or_else(|| CliError::Validation(format!("missing required value --{key}")))?;
    parse_real(key, &text)
}

fn optional(settings: &Settings, flag: Option<&str>, key: &str, default: f64) -> CliResult<f64> {
    settings.pick(flag, key).map_or(Ok(default), |t| parse_real(key, &t))
}

fn optional_list(settings: &Settings, flag: Option<&str>, key: &str) -> CliResult<Option<Vec<f64>>> {
    settings.pick(flag, key).map(|t| parse_list(key, &t)).transpose()
}

fn num(x: f64) -> String {
    crate::output::format_num(x)
}

fn join(values: &[f64]) -> String {
    values.iter().map(|&v| num(v)).collect::<Vec<_>>().join(",")
}

pub fn table1() -> Report {
    let mut table = Table::new(["alpha", "n", "element", "ratio", "ab_effect"]);
    for row in analysis::table_one() {
        table.push(vec![
            Cell::Sig(row.alpha, 6),
            Cell::Int(row.n),
            Cell::Text(row.element.to_string()),
            Cell::Fixed(row.ratio, row.decimals),
            Cell::YesNo(row.ab_effect),
        ]);
    }
    Report {
        table,
        header: "abkm table1 l=-1".into(),
        single: false,
        default_format: Format::Csv,
    }
}

pub const PROFILE_KEYS: [&str; 6] =
    ["alpha", "rk", "rk-preset", "theta-start-deg", "theta-stop-deg", "theta-step-deg"];

pub fn profile(settings: &Settings, args: &ProfileArgs, unit: Option<AngleUnit>) -> CliResult<Report> {
    let alpha = required(settings, args.alpha.as_deref(), "alpha")?;
    let preset = match settings.pick(None, "rk-preset") {
        _ if args.rk_preset.is_some() => args.rk_preset.unwrap(),
        Some(text) => <RkPreset as clap::ValueEnum>::from_str(&text, true)
            .map_err(|_| CliError::Validation(format!("rk-preset: unknown preset '{text}'")))?,
        None => RkPreset::Family,
    };
    let rk_values = match optional_list(settings, args.rk.as_deref(), "rk")? {
        Some(list) => list,
        None => match preset {
            RkPreset::Family => FAMILY_RK.to_vec(),
            RkPreset::Critical => CRITICAL_RK.to_vec(),
        },
    };
    let start = optional(settings, args.theta_start_deg.as_deref(), "theta-start-deg", 0.0)?;
    let stop = optional(settings, args.theta_stop_deg.as_deref(), "theta-stop-deg", 179.0)?;
    let step = optional(settings, args.theta_step_deg.as_deref(), "theta-step-deg", 1.0)?;

    let degrees = analysis::degree_grid(start, stop, step)?;
    let radians: Vec<f64> = degrees.iter().map(|d| d.to_radians()).collect();
    let sweep = analysis::profile_sweep(alpha, &rk_values, &radians)?;

    let unit = unit.unwrap_or(AngleUnit::Deg);
    let mut table = Table::new([format!("theta_{}", unit.suffix()), "rk".into(), "ratio".into()]);
    for (rk, row) in sweep.rk_values.iter().zip(&sweep.values) {
        for ((deg, rad), value) in degrees.iter().zip(&radians).zip(row) {
            let angle = match unit {
                AngleUnit::Deg => *deg,
                AngleUnit::Rad => *rad,
            };
            table.push(vec![Cell::Num(angle), Cell::Num(*rk), Cell::Num(*value)]);
        }
    }
    let (alpha_s, start_s, stop_s, step_s) = (num(alpha), num(start), num(stop), num(step));
    Ok(Report {
        table,
        header: format!(
            "abkm profile alpha={alpha_s} rk={} theta_deg={start_s}:{stop_s}:{step_s}",
            join(&rk_values)
        ),
        single: false,
        default_format: Format::Csv,
    })
}

pub const SIMULATE_KEYS: [&str; 11] = [
    "model", "alpha", "rk", "theta-dot", "theta-dots", "theta0s", "phases", "dt", "t-end",
    "record-every", "margin",
];

pub fn simulate(settings: &Settings, args: &SimulateArgs, unit: Option<AngleUnit>) -> CliResult<Report> {
    let kind = match (args.model, settings.pick(None, "model")) {
        (Some(m), _) => m,
        (None, Some(text)) => <ModelKind as clap::ValueEnum>::from_str(&text, true)
            .map_err(|_| CliError::Validation(format!("model: unknown model '{text}'")))?,
        (None, None) => ModelKind::Mirrored,
    };
    let alpha = required(settings, args.alpha.as_deref(), "alpha")?;
    let rk = optional(settings, args.rk.as_deref(), "rk", 0.0)?;
    let params = ModelParams::new(alpha, rk)?;

    let trajs: Vec<Trajectory> = match kind {
        ModelKind::Mirrored => {
            let theta_dot = optional(settings, args.theta_dot.as_deref(), "theta-dot", 1.0)?;
            let t1 = Trajectory::path1(theta_dot)?;
            vec![t1, t1.mirrored()]
        }
        _ => {
            let dots = optional_list(settings, args.theta_dots.as_deref(), "theta-dots")?
                .unwrap_or_else(|| vec![1.0, -1.0]);
            let starts = optional_list(settings, args.theta0s.as_deref(), "theta0s")?
                .unwrap_or_else(|| vec![0.0; dots.len()]);
            if starts.len() != dots.len() {
                return Err(CliError::Validation(format!(
                    "{} starting angles for {} velocities",
                    starts.len(),
                    dots.len()
                )));
            }
            starts
                .iter()
                .zip(&dots)
                .map(|(&th0, &dot)| Trajectory::new(th0, dot))
                .collect::<Result<_, _>>()?
        }
    };
    let n = trajs.len();
    let phases = optional_list(settings, args.phases.as_deref(), "phases")?
        .unwrap_or_else(|| vec![0.0; n]);
    let initial = EnsembleState::at_start_with_phases(&trajs, phases)?;

    let fastest = trajs.iter().map(|t| t.theta_dot.abs()).fold(0.0, f64::max);
    let (dt_default, t_end_default) = if fastest > 0.0 {
        (1e-4 * PI / fastest, PI / fastest)
    } else {
        (1e-4, 1.0)
    };
    let dt = optional(settings, args.dt.as_deref(), "dt", dt_default)?;
    let t_end = optional(settings, args.t_end.as_deref(), "t-end", t_end_default)?;
    let stride = optional(settings, args.record_every.as_deref(), "record-every", 100.0)?;
    if stride < 1.0 || stride.fract() != 0.0 {
        return Err(CliError::Validation(format!("record-every must be a positive integer, got {stride}")));
    }
    let margin = optional(settings, args.margin.as_deref(), "margin", 1e-6)?;
    let config = IntegratorConfig::new(dt, t_end)?
        .record_every(stride as usize)?
        .margin(margin)?;

    let model = match kind {
        ModelKind::Mirrored => Model::Mirrored,
        ModelKind::General => Model::General,
        ModelKind::N => Model::AllToAll,
        ModelKind::Half => Model::HalfPhase,
    };
    let series = integrate(model, &params, &initial, &trajs, &config)?;

    let unit = unit.unwrap_or(AngleUnit::Rad);
    let mirrored = model == Model::Mirrored;
    let mut columns = vec!["t".to_string()];
    columns.extend((1..=n).map(|i| format!("theta_{i}")));
    columns.extend((1..=n).map(|i| format!("phase_{i}")));
    columns.push("order_r".into());
    if mirrored {
        columns.push(PHASE_DIFF_RESIDUAL.into());
    }
    let mut table = Table::new(columns);
    for (state, diag) in series.samples.iter().zip(&series.diagnostics) {
        let mut row = vec![Cell::Num(state.t)];
        row.extend(state.thetas.iter().map(|&th| Cell::Num(unit.convert(th))));
        row.extend(state.phases.iter().map(|&p| Cell::Num(p)));
        row.push(Cell::Num(order_parameter(&state.phases).0));
        if mirrored {
            row.push(Cell::Num(diag[PHASE_DIFF_RESIDUAL]));
        }
        table.push(row);
    }

    let (alpha_s, rk_s, dt_s, t_end_s, margin_s) = (num(alpha), num(rk), num(dt), num(t_end), num(margin));
    let header = format!(
        "abkm simulate model={kind:?} alpha={alpha_s} rk={rk_s} theta_dots={} theta0s={} dt={dt_s} t_end={t_end_s} record_every={stride} margin={margin_s} angle_unit={}",
        join(&trajs.iter().map(|t| t.theta_dot).collect::<Vec<_>>()),
        join(&trajs.iter().map(|t| t.theta0).collect::<Vec<_>>()),
        unit.suffix(),
    )
    .to_lowercase();
    Ok(Report { table, header, single: false, default_format: Format::Csv })
}

pub const RCRIT_KEYS: [&str; 5] = ["alpha", "mode", "rk-lo", "rk-hi", "tol"];

pub fn rcrit(settings: &Settings, args: &RcritArgs) -> CliResult<Report> {
    let mode = if args.closed {
        RcritMode::Closed
    } else if args.scan {
        RcritMode::Scan
    } else if args.both {
        RcritMode::Both
    } else if let Some(m) = args.mode {
        m
    } else if let Some(text) = settings.pick(None, "mode") {
        <RcritMode as clap::ValueEnum>::from_str(&text, true)
            .map_err(|_| CliError::Validation(format!("mode: unknown mode '{text}'")))?
    } else {
        RcritMode::Both
    };
    let alpha = required(settings, args.alpha.as_deref(), "alpha")?;
    let rk_lo = optional(settings, args.rk_lo.as_deref(), "rk-lo", 0.0)?;
    let rk_hi = optional(settings, args.rk_hi.as_deref(), "rk-hi", 1.0)?;
    let tol = optional(settings, args.tol.as_deref(), "tol", 1e-12)?;

    let closed = matches!(mode, RcritMode::Closed | RcritMode::Both)
        .then(|| analysis::critical_rk_closed_form(alpha))
        .transpose()?;
    let scan = matches!(mode, RcritMode::Scan | RcritMode::Both)
        .then(|| analysis::critical_rk_scan(alpha, rk_lo, rk_hi, tol))
        .transpose()?;

    let mut columns = vec!["alpha"];
    let mut row = vec![Cell::Num(alpha)];
    if let Some(c) = closed {
        columns.push("rk_crit_closed_form");
        row.push(Cell::Num(c));
    }
    if let Some(s) = scan {
        columns.push("rk_crit_scan");
        row.push(Cell::Num(s));
    }
    if let (Some(c), Some(s)) = (closed, scan) {
        columns.push("discrepancy");
        row.push(Cell::Num((c - s).abs()));
    }
    let mut table = Table::new(columns);
    table.push(row);
    let (alpha_s, rk_lo_s, rk_hi_s, tol_s) = (num(alpha), num(rk_lo), num(rk_hi), num(tol));
    let header = match scan {
        Some(_) => format!(
            "abkm rcrit mode={} alpha={alpha_s} rk_lo={rk_lo_s} rk_hi={rk_hi_s} tol={tol_s} panels={}",
            format!("{mode:?}").to_lowercase(),
            analysis::CHORD_PANELS
        ),
        None => format!("abkm rcrit mode=closed alpha={alpha_s}"),
    };
    Ok(Report { table, header, single: true, default_format: Format::Csv })
}

pub const SYNC_KEYS: [&str; 2] = ["alpha", "theta-dot"];

pub fn sync(settings: &Settings, args: &SyncArgs) -> CliResult<Report> {
    let alpha = required(settings, args.alpha.as_deref(), "alpha")?;
    let theta_dot = required(settings, args.theta_dot.as_deref(), "theta-dot")?;
    let report = analysis::synchronizes(alpha, theta_dot)?;
    let mut table = Table::new(["alpha", "k", "k_critical", "synchronizes"]);
    table.push(vec![
        Cell::Num(report.alpha),
        Cell::Num(report.k_value),
        Cell::Num(report.k_critical),
        Cell::Bool(report.synchronizes),
    ]);
    Ok(Report {
        table,
        header: format!("abkm sync alpha={} theta_dot={}", num(alpha), num(theta_dot)),
        single: true,
        default_format: Format::Json,
    })
}

pub const WAVEFUNCTION_KEYS: [&str; 3] = ["alpha", "rk", "theta"];

pub fn wavefunction(settings: &Settings, args: &WavefunctionArgs, unit: Option<AngleUnit>) -> CliResult<Report> {
    let alpha = required(settings, args.alpha.as_deref(), "alpha")?;
    let rk = required(settings, args.rk.as_deref(), "rk")?;
    let thetas = optional_list(settings, args.theta.as_deref(), "theta")?.unwrap_or_else(|| vec![0.0]);
    let params = ModelParams::new(alpha, rk)?;
    let unit = unit.unwrap_or(AngleUnit::Rad);
    let mut table = Table::new([
        format!("theta_{}", unit.suffix()),
        "inc_re".into(),
        "inc_im".into(),
        "scatt_re".into(),
        "scatt_im".into(),
        "total_re".into(),
        "total_im".into(),
        "scatt_abs".into(),
    ]);
    for &theta in &thetas {
        let inc = wavefunction::psi_inc(&params, theta)?;
        let scatt = wavefunction::psi_scatt(&params, theta)?;
        let total = inc + scatt;
        table.push(vec![
            Cell::Num(unit.convert(theta)),
            Cell::Num(inc.re),
            Cell::Num(inc.im),
            Cell::Num(scatt.re),
            Cell::Num(scatt.im),
            Cell::Num(total.re),
            Cell::Num(total.im),
            Cell::Num(scatt.norm()),
        ]);
    }
    Ok(Report {
        table,
        header: format!("abkm wavefunction alpha={} rk={}", num(alpha), num(rk)),
        single: false,
        default_format: Format::Csv,
    })
}
