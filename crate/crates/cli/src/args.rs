use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::output::{AngleUnit, Format};

/// Kuramoto model of the bound-state Aharonov-Bohm effect: table, profile,
/// simulation and threshold calculations.
///
/// Exit codes: 0 success, 1 validation, 2 I/O, 3 numerical failure,
/// 4 search failure.
#[derive(Debug, Parser)]
#[command(name = "abkm", version)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Output file (stdout when absent).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// key=value file; flags override its entries.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Unit for angular columns in the output.
    #[arg(long, global = true, value_enum)]
    pub angle_unit: Option<AngleUnit>,

    /// Omit the leading `#` metadata line.
    #[arg(long, global = true)]
    pub no_header: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Limit ratios and detectability for alpha = -1/n.
    Table1,

    /// Ratio profile Theta_1'/theta' against theta for a family of Rk.
    Profile(ProfileArgs),

    /// Integrate the phase equations along prescribed trajectories.
    Simulate(SimulateArgs),

    /// Critical Rk from the closed form and/or the quadrature scan.
    Rcrit(RcritArgs),

    /// Synchronization threshold for one (alpha, theta_dot).
    Sync(SyncArgs),

    /// Point values of the incident, scattered and total waves.
    Wavefunction(WavefunctionArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RkPreset {
    /// 13 curves, Rk = 0.0001 ... 1.0.
    Family,
    /// Rk = 0.18 ... 0.26 around the alpha = -1/3 critical radius.
    Critical,
}

#[derive(Debug, Args)]
pub struct ProfileArgs {
    /// Flux parameter; accepts ratios such as -1/3.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,

    /// Comma-separated Rk values (overrides --rk-preset).
    #[arg(long)]
    pub rk: Option<String>,

    #[arg(long, value_enum)]
    pub rk_preset: Option<RkPreset>,

    #[arg(long)]
    pub theta_start_deg: Option<String>,

    #[arg(long)]
    pub theta_stop_deg: Option<String>,

    #[arg(long)]
    pub theta_step_deg: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelKind {
    /// Two mirrored paths.
    Mirrored,
    /// Two paths with independent velocities.
    General,
    /// N oscillators, all-to-all coupling.
    N,
    /// Half-phase variant.
    Half,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, value_enum)]
    pub model: Option<ModelKind>,

    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,

    #[arg(long)]
    pub rk: Option<String>,

    /// Path 1 angular velocity for the mirrored model.
    #[arg(long, allow_hyphen_values = true)]
    pub theta_dot: Option<String>,

    /// Comma-separated angular velocities (general, n, half).
    #[arg(long, allow_hyphen_values = true)]
    pub theta_dots: Option<String>,

    /// Comma-separated starting angles in radians (general, n, half).
    #[arg(long, allow_hyphen_values = true)]
    pub theta0s: Option<String>,

    /// Comma-separated initial phases (default all zero).
    #[arg(long, allow_hyphen_values = true)]
    pub phases: Option<String>,

    #[arg(long)]
    pub dt: Option<String>,

    #[arg(long)]
    pub t_end: Option<String>,

    #[arg(long)]
    pub record_every: Option<String>,

    /// Stop this far (radians) before |theta| reaches pi.
    #[arg(long)]
    pub margin: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RcritMode {
    Closed,
    Scan,
    Both,
}

#[derive(Debug, Args)]
pub struct RcritArgs {
    /// closed, scan or both (default both).
    #[arg(value_enum)]
    pub mode: Option<RcritMode>,

    #[arg(long, conflicts_with_all = ["scan", "both", "mode"])]
    pub closed: bool,

    #[arg(long, conflicts_with_all = ["closed", "both", "mode"])]
    pub scan: bool,

    #[arg(long, conflicts_with_all = ["closed", "scan", "mode"])]
    pub both: bool,

    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,

    #[arg(long)]
    pub rk_lo: Option<String>,

    #[arg(long)]
    pub rk_hi: Option<String>,

    /// Bisection interval width.
    #[arg(long)]
    pub tol: Option<String>,
}

#[derive(Debug, Args)]
pub struct SyncArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,

    #[arg(long, allow_hyphen_values = true)]
    pub theta_dot: Option<String>,
}

#[derive(Debug, Args)]
pub struct WavefunctionArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,

    #[arg(long)]
    pub rk: Option<String>,

    /// Comma-separated angles in radians.
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<String>,
}
