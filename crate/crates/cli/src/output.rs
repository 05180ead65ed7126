//! Tabular output as CSV or JSON.
//!
//! Numbers are written with Rust's shortest round-trip formatting, which is
//! locale independent and never uses a thousands separator.

use serde_json::{Map, Number, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum AngleUnit {
    Rad,
    Deg,
}

impl AngleUnit {
    pub fn convert(self, radians: f64) -> f64 {
        match self {
            AngleUnit::Rad => radians,
            AngleUnit::Deg => radians.to_degrees(),
        }
    }

    pub fn suffix(self) -> &'static str {
        match self {
            AngleUnit::Rad => "rad",
            AngleUnit::Deg => "deg",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    /// Fixed number of decimals in CSV.
    Fixed(f64, usize),
    /// Significant digits in CSV, trailing zeros trimmed.
    Sig(f64, usize),
    Int(i64),
    Text(String),
    Bool(bool),
    /// Boolean rendered `yes`/`no` in CSV.
    YesNo(bool),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => format_num(*x),
            Cell::Fixed(x, d) => format!("{x:.d$}"),
            Cell::Sig(x, digits) => format_sig(*x, *digits),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::YesNo(b) => if *b { "yes" } else { "no" }.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(x) | Cell::Fixed(x, _) | Cell::Sig(x, _) => {
                Number::from_f64(*x).map_or(Value::Null, Value::Number)
            }
            Cell::Int(i) => Value::from(*i),
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Bool(b) | Cell::YesNo(b) => Value::from(*b),
        }
    }
}

/// Shortest round-trip text; exponent form only for very small or large
/// magnitudes. Negative zero is written as `0`.
pub fn format_num(x: f64) -> String {
    let x = x + 0.0;
    let a = x.abs();
    if a != 0.0 && a.is_finite() && !(1e-5..1e16).contains(&a) {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

/// `x` to `digits` significant digits without exponent notation.
pub fn format_sig(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - magnitude).max(0) as usize;
    let text = format!("{x:.decimals$}");
    if text.contains('.') {
        text.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        text
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self { columns: columns.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// CSV text with an optional leading `# ...` metadata line.
    pub fn to_csv(&self, header: Option<&str>) -> String {
        let mut out = String::new();
        if let Some(h) = header {
            out.push_str("# ");
            out.push_str(h);
            out.push('\n');
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let fields: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }

    fn object(&self, row: &[Cell]) -> Value {
        let map: Map<String, Value> = self
            .columns
            .iter()
            .cloned()
            .zip(row.iter().map(Cell::json))
            .collect();
        Value::Object(map)
    }

    /// An array of row objects, or a bare object when `single` and one row.
    pub fn to_json(&self, single: bool) -> String {
        let value = if single && self.rows.len() == 1 {
            self.object(&self.rows[0])
        } else {
            Value::Array(self.rows.iter().map(|r| self.object(r)).collect())
        };
        let mut text = serde_json::to_string_pretty(&value).expect("json values serialize");
        text.push('\n');
        text
    }
}
