//! `abkm` command-line front end.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::error::ErrorKind;
use clap::{Parser, ValueEnum};

use crate::args::{Cli, Command};
use crate::commands::{Report, COMMON_KEYS};
use crate::config::Settings;
use crate::error::{CliError, CliResult};
use crate::output::{AngleUnit, Format};

/// Parses `argv`, runs the command and returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("abkm: {e}");
            e.exit_code()
        }
    }
}

fn parse_enum<E: ValueEnum>(key: &str, text: &str) -> CliResult<E> {
    E::from_str(text, true).map_err(|_| CliError::Validation(format!("{key}: unknown value '{text}'")))
}

fn execute(cli: &Cli) -> CliResult<()> {
    let settings = match &cli.common.config {
        Some(path) => Settings::load(path)?,
        None => Settings::default(),
    };
    let command_keys: &[&str] = match &cli.command {
        Command::Table1 => &[],
        Command::Profile(_) => &commands::PROFILE_KEYS,
        Command::Simulate(_) => &commands::SIMULATE_KEYS,
        Command::Rcrit(_) => &commands::RCRIT_KEYS,
        Command::Sync(_) => &commands::SYNC_KEYS,
        Command::Wavefunction(_) => &commands::WAVEFUNCTION_KEYS,
    };
    let allowed: Vec<&str> = COMMON_KEYS.iter().chain(command_keys).copied().collect();
    settings.check_keys(&allowed)?;

    let format = match (cli.common.format, settings.pick(None, "format")) {
        (Some(f), _) => Some(f),
        (None, Some(text)) => Some(parse_enum::<Format>("format", &text)?),
        (None, None) => None,
    };
    let unit = match (cli.common.angle_unit, settings.pick(None, "angle-unit")) {
        (Some(u), _) => Some(u),
        (None, Some(text)) => Some(parse_enum::<AngleUnit>("angle-unit", &text)?),
        (None, None) => None,
    };
    let no_header = settings.flag_or_bool(cli.common.no_header, "no-header")?;
    let out = cli
        .common
        .out
        .clone()
        .or_else(|| settings.pick(None, "out").map(Into::into));

    let report = match &cli.command {
        Command::Table1 => commands::table1(),
        Command::Profile(a) => commands::profile(&settings, a, unit)?,
        Command::Simulate(a) => commands::simulate(&settings, a, unit)?,
        Command::Rcrit(a) => commands::rcrit(&settings, a)?,
        Command::Sync(a) => commands::sync(&settings, a)?,
        Command::Wavefunction(a) => commands::wavefunction(&settings, a, unit)?,
    };
    let text = render(&report, format, no_header);
    emit(&text, out.as_deref())
}

/// Serializes a report. JSON output never carries the metadata line.
pub fn render(report: &Report, format: Option<Format>, no_header: bool) -> String {
    match format.unwrap_or(report.default_format) {
        Format::Csv => {
            let header = (!no_header).then_some(report.header.as_str());
            report.table.to_csv(header)
        }
        Format::Json => report.table.to_json(report.single),
    }
}

fn emit(text: &str, out: Option<&Path>) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}
