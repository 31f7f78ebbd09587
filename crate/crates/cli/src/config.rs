//! `key = value` configuration with command-line overrides.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use clap::ValueEnum;
use serde_json::{json, Value};

use crate::output::real;
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Table,
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Json => "json",
            Self::Csv => "csv",
            Self::Table => "table",
        })
    }
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <Self as ValueEnum>::from_str(s, true)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub tolerance_unitary: f64,
    pub tolerance_integrality: f64,
    pub grade_cutoff: u32,
    pub beta_floor: f64,
    pub output_format: OutputFormat,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            tolerance_unitary: 1e-9,
            tolerance_integrality: 1e-6,
            grade_cutoff: 8,
            beta_floor: 0.3,
            output_format: OutputFormat::Json,
        }
    }
}

fn parse_value<T: FromStr>(key: &str, value: &str) -> Result<T, CliError> {
    value
        .parse()
        .map_err(|_| CliError::Usage(format!("config: bad value {value:?} for {key}")))
}

impl Config {
    /// Parses `key = value` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut config = Self::default();
        for (number, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Usage(format!("config line {}: expected key = value", number + 1))
            })?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "tolerance_unitary" => config.tolerance_unitary = parse_value(key, value)?,
                "tolerance_integrality" => config.tolerance_integrality = parse_value(key, value)?,
                "grade_cutoff" => config.grade_cutoff = parse_value(key, value)?,
                "beta_floor" => config.beta_floor = parse_value(key, value)?,
                "output_format" => config.output_format = parse_value(key, value)?,
                other => return Err(CliError::Usage(format!("config: unknown key {other:?}"))),
            }
        }
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        for (name, v) in [
            ("tolerance_unitary", self.tolerance_unitary),
            ("tolerance_integrality", self.tolerance_integrality),
            ("beta_floor", self.beta_floor),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(CliError::Usage(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "tolerance_unitary": real(self.tolerance_unitary),
            "tolerance_integrality": real(self.tolerance_integrality),
            "grade_cutoff": self.grade_cutoff,
            "beta_floor": real(self.beta_floor),
            "output_format": self.output_format.to_string(),
        })
    }
}
