//! Flat `key = value` configuration files. Blank lines and lines starting
//! with `#` are ignored; keys match the long flag names (`theta-dot`, or
//! `theta_dot`). Command-line flags take precedence over file values.

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Default)]
pub struct Settings {
    values: BTreeMap<String, String>,
}

fn normalize(key: &str) -> String {
    key.trim().replace('_', "-")
}

impl Settings {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        let mut values = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Validation(format!("config line {}: expected key=value", lineno + 1))
            })?;
            let key = normalize(key);
            if key.is_empty() {
                return Err(CliError::Validation(format!("config line {}: empty key", lineno + 1)));
            }
            values.insert(key, value.trim().to_string());
        }
        Ok(Self { values })
    }

    /// Rejects keys the running command does not understand.
    pub fn check_keys(&self, allowed: &[&str]) -> CliResult<()> {
        match self.values.keys().find(|k| !allowed.contains(&k.as_str())) {
            Some(k) => Err(CliError::Validation(format!("unknown config key '{k}'"))),
            None => Ok(()),
        }
    }

    /// The flag value if given, otherwise the file value.
    pub fn pick(&self, flag: Option<&str>, key: &str) -> Option<String> {
        flag.map(str::to_string).or_else(|| self.values.get(key).cloned())
    }

    pub fn flag_or_bool(&self, flag: bool, key: &str) -> CliResult<bool> {
        if flag {
            return Ok(true);
        }
        match self.values.get(key).map(String::as_str) {
            None => Ok(false),
            Some("true" | "yes" | "1") => Ok(true),
            Some("false" | "no" | "0") => Ok(false),
            Some(other) => Err(CliError::Validation(format!("{key}: expected a boolean, got '{other}'"))),
        }
    }
}

/// Parses a real number, also accepting a ratio such as `-1/3`.
pub fn parse_real(key: &str, text: &str) -> CliResult<f64> {
    let bad = || CliError::Validation(format!("{key}: cannot parse '{text}' as a number"));
    let value = match text.trim().split_once('/') {
        Some((num, den)) => {
            let num: f64 = num.trim().parse().map_err(|_| bad())?;
            let den: f64 = den.trim().parse().map_err(|_| bad())?;
            if den == 0.0 {
                return Err(CliError::Validation(format!("{key}: zero denominator in '{text}'")));
            }
            num / den
        }
        None => text.trim().parse().map_err(|_| bad())?,
    };
    if !value.is_finite() {
        return Err(CliError::Validation(format!("{key}: '{text}' is not finite")));
    }
    Ok(value)
}

pub fn parse_list(key: &str, text: &str) -> CliResult<Vec<f64>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| parse_real(key, s))
        .collect()
}
