use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, ValueEnum};
use pbswanson::{ModelParams, Preset};
use serde::Serialize;

use crate::error::CliError;

const DEFAULT_PRESET: Preset = Preset::Fig1B;
const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Precision {
    Standard,
    Extended,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Flags shared by every subcommand.
#[derive(Args, Debug, Default, Clone)]
pub struct CommonArgs {
    /// Oscillator frequency, must exceed 2 lambda
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub omega: Option<f64>,
    /// Coupling of the quadratic terms
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub lambda: Option<f64>,
    /// Shift of the lowering operator
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    /// Shift of the raising operator
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    /// Named parameter set: fig1-a, fig1-b, fig1-c or fig1-d
    #[arg(long, global = true)]
    pub preset: Option<String>,
    /// Largest eigenstate index (default 30 standard, 100 extended)
    #[arg(long = "n-max", global = true)]
    pub n_max: Option<usize>,
    /// Truncation order of the bi-coherent series
    #[arg(long = "L", global = true)]
    pub truncation: Option<usize>,
    /// Disk radius for the resolution of the identity
    #[arg(long = "R", global = true, allow_negative_numbers = true)]
    pub radius: Option<f64>,
    /// Bi-coherent label as RE,IM
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub z: Option<String>,
    #[arg(long, global = true, value_enum)]
    pub precision: Option<Precision>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Output file (a directory for figure1). Stdout if omitted.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// key=value file; command-line flags take precedence
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Seed for randomized verification inputs
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub preset: Option<Preset>,
    pub model: ModelParams,
    pub n_max: usize,
    #[serde(rename = "L")]
    pub truncation: usize,
    #[serde(rename = "R")]
    pub radius: f64,
    pub z: (f64, f64),
    pub precision: Precision,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub seed: u64,
}

pub fn parse_z(s: &str) -> Result<(f64, f64), CliError> {
    let bad = || CliError::Config(format!("--z expects RE,IM, got '{s}'"));
    let (re, im) = s.split_once(',').ok_or_else(bad)?;
    let re: f64 = re.trim().parse().map_err(|_| bad())?;
    let im: f64 = im.trim().parse().map_err(|_| bad())?;
    if !(re.is_finite() && im.is_finite()) {
        return Err(bad());
    }
    Ok((re, im))
}

/// Flat `key=value` lines; `#` starts a comment. Keys are flag names without
/// the leading dashes; `n_max` and `nmax` are accepted for `n-max`.
pub fn parse_config_file(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut out = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::Config(format!("config line {}: expected key=value", lineno + 1))
        })?;
        let key = match key.trim() {
            "n_max" | "nmax" => "n-max".to_string(),
            k => k.to_string(),
        };
        out.insert(key, value.trim().to_string());
    }
    Ok(out)
}

fn parse_value<T: FromStr>(key: &str, value: &str) -> Result<T, CliError> {
    value
        .parse()
        .map_err(|_| CliError::Config(format!("config key '{key}': cannot parse '{value}'")))
}

fn parse_preset(s: &str) -> Result<Preset, CliError> {
    s.parse::<Preset>().map_err(|_| {
        CliError::Config(format!(
            "unknown preset '{s}' (expected fig1-a, fig1-b, fig1-c or fig1-d)"
        ))
    })
}

/// Merge the config file into the flags: a flag that was given wins.
fn merge_file(args: &CommonArgs, file: &BTreeMap<String, String>) -> Result<CommonArgs, CliError> {
    let mut m = args.clone();
    for (key, value) in file {
        match key.as_str() {
            "omega" => m.omega = m.omega.or(Some(parse_value(key, value)?)),
            "lambda" => m.lambda = m.lambda.or(Some(parse_value(key, value)?)),
            "alpha" => m.alpha = m.alpha.or(Some(parse_value(key, value)?)),
            "beta" => m.beta = m.beta.or(Some(parse_value(key, value)?)),
            "preset" => m.preset = m.preset.or(Some(value.clone())),
            "n-max" => m.n_max = m.n_max.or(Some(parse_value(key, value)?)),
            "L" => m.truncation = m.truncation.or(Some(parse_value(key, value)?)),
            "R" => m.radius = m.radius.or(Some(parse_value(key, value)?)),
            "z" => m.z = m.z.or(Some(value.clone())),
            "seed" => m.seed = m.seed.or(Some(parse_value(key, value)?)),
            "out" => m.out = m.out.or(Some(PathBuf::from(value))),
            "precision" => {
                let p = Precision::from_str(value, true).map_err(CliError::Config)?;
                m.precision = m.precision.or(Some(p));
            }
            "format" => {
                let f = Format::from_str(value, true).map_err(CliError::Config)?;
                m.format = m.format.or(Some(f));
            }
            other => return Err(CliError::Config(format!("unknown config key '{other}'"))),
        }
    }
    Ok(m)
}

fn read_config(path: &Path) -> Result<BTreeMap<String, String>, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_config_file(&text)
}

/// Flags, then the config file, then the preset (fig1-b if none), then defaults.
pub fn resolve(args: &CommonArgs) -> Result<RunConfig, CliError> {
    let merged = match &args.config {
        Some(path) => merge_file(args, &read_config(path)?)?,
        None => args.clone(),
    };
    let preset = merged.preset.as_deref().map(parse_preset).transpose()?;
    let base = preset.unwrap_or(DEFAULT_PRESET).params();
    let model = ModelParams::new(
        merged.omega.unwrap_or(base.omega),
        merged.lambda.unwrap_or(base.lambda),
        merged.alpha.unwrap_or(base.alpha),
        merged.beta.unwrap_or(base.beta),
    )?;
    let precision = merged.precision.unwrap_or(Precision::Extended);
    let n_max = merged.n_max.unwrap_or(match precision {
        Precision::Standard => 30,
        Precision::Extended => 100,
    });
    let truncation = merged.truncation.unwrap_or(60);
    if truncation < 1 {
        return Err(CliError::Config("L must be at least 1".into()));
    }
    let radius = merged.radius.unwrap_or(6.0);
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(CliError::Config(format!(
            "R must be positive, got {radius}"
        )));
    }
    let z = merged
        .z
        .as_deref()
        .map(parse_z)
        .transpose()?
        .unwrap_or((0.0, 0.0));
    Ok(RunConfig {
        preset,
        model,
        n_max,
        truncation,
        radius,
        z,
        precision,
        format: merged.format.unwrap_or(Format::Csv),
        out: merged.out,
        seed: merged.seed.unwrap_or(DEFAULT_SEED),
    })
}
