//! Flat `key = value` run configuration.
//!
//! ```text
//! # comment
//! half_width = 1
//! gamma = 0.5, 1, 0.5
//! omega_bar = 0.1
//! initial = 0+0i, 1+0i, 0+0i
//! t_max = 50
//! samples = 1000
//! ```
//!
//! Lists are comma separated, complex numbers are written `re+imi`. Every
//! key is optional; missing keys fall back to the one-photon configuration
//! with γ⁽±¹⁾ = 0.5 and ω̄ = 0.1.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use multiplet_core::multiplet::central_state;
use multiplet_core::{validate, Error as CoreError, MultipletParams, SweepParam, C64};

use crate::error::CliError;

pub const KEYS: [&str; 13] = [
    "half_width",
    "gamma",
    "omega_bar",
    "initial",
    "t_max",
    "samples",
    "dt_out",
    "threshold",
    "sweep_param",
    "sweep_values",
    "probe_time",
    "output",
    "format",
];

pub const DEFAULT_HALF_WIDTH: usize = 1;
pub const DEFAULT_CENTRAL_RATE: f64 = 1.0;
pub const DEFAULT_SIDE_RATE: f64 = 0.5;
pub const DEFAULT_OMEGA_BAR: f64 = 0.1;
pub const DEFAULT_T_MAX: f64 = 50.0;
pub const DEFAULT_SAMPLES: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            _ => Err(()),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        })
    }
}

/// How the output time grid on `[0, t_max]` is laid out.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OutputGrid {
    /// Evenly spaced, both ends included.
    Samples(usize),
    /// `0, dt, 2 dt, ...`, closed with `t_max`.
    Step(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub param: SweepParam,
    pub values: Vec<f64>,
    pub probe_time: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub half_width: usize,
    pub gamma: Vec<f64>,
    pub omega_bar: f64,
    pub initial: Vec<C64>,
    pub t_max: f64,
    pub grid: OutputGrid,
    pub threshold: f64,
    pub sweep: Option<SweepSpec>,
    pub output: Option<PathBuf>,
    pub format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            half_width: DEFAULT_HALF_WIDTH,
            gamma: default_rates(DEFAULT_HALF_WIDTH),
            omega_bar: DEFAULT_OMEGA_BAR,
            initial: central_state(DEFAULT_HALF_WIDTH),
            t_max: DEFAULT_T_MAX,
            grid: OutputGrid::Samples(DEFAULT_SAMPLES),
            threshold: multiplet_core::DEFAULT_PHASE_THRESHOLD,
            sweep: None,
            output: None,
            format: OutputFormat::Csv,
        }
    }
}

fn default_rates(half_width: usize) -> Vec<f64> {
    let mut gamma = vec![DEFAULT_SIDE_RATE; 2 * half_width + 1];
    gamma[half_width] = DEFAULT_CENTRAL_RATE;
    gamma
}

impl RunConfig {
    pub fn params(&self) -> MultipletParams {
        MultipletParams {
            half_width: self.half_width,
            gamma: self.gamma.clone(),
            omega_bar: self.omega_bar,
            initial: self.initial.clone(),
        }
    }

    pub fn times(&self) -> Vec<f64> {
        match self.grid {
            OutputGrid::Samples(n) => multiplet_core::dynamics::uniform_grid(self.t_max, n),
            OutputGrid::Step(dt) => {
                let steps = (self.t_max / dt * (1.0 + 1e-12)).floor() as usize;
                let mut times: Vec<f64> = (0..=steps).map(|k| k as f64 * dt).collect();
                let last = *times.last().unwrap();
                if self.t_max - last > 1e-9 * dt {
                    times.push(self.t_max);
                } else {
                    *times.last_mut().unwrap() = self.t_max;
                }
                times
            }
        }
    }

    /// Render back to the configuration format. Parsing the result yields
    /// an identical config.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let mut line = |k: &str, v: String| {
            out.push_str(k);
            out.push_str(" = ");
            out.push_str(&v);
            out.push('\n');
        };
        line("half_width", self.half_width.to_string());
        line("gamma", join(self.gamma.iter().map(f64::to_string)));
        line("omega_bar", self.omega_bar.to_string());
        line("initial", join(self.initial.iter().map(|z| format_complex(*z))));
        line("t_max", self.t_max.to_string());
        match self.grid {
            OutputGrid::Samples(n) => line("samples", n.to_string()),
            OutputGrid::Step(dt) => line("dt_out", dt.to_string()),
        }
        line("threshold", self.threshold.to_string());
        if let Some(sweep) = &self.sweep {
            line("sweep_param", sweep.param.to_string());
            line("sweep_values", join(sweep.values.iter().map(f64::to_string)));
            line("probe_time", sweep.probe_time.to_string());
        }
        if let Some(path) = &self.output {
            line("output", path.display().to_string());
        }
        line("format", self.format.to_string());
        out
    }
}

fn join(items: impl Iterator<Item = String>) -> String {
    items.collect::<Vec<_>>().join(", ")
}

pub fn format_complex(z: C64) -> String {
    format!("{}{:+}i", z.re, z.im)
}

/// Parse `re+imi`, `re-imi`, a bare real, or a bare imaginary `imi`.
pub fn parse_complex(s: &str) -> Option<C64> {
    let s = s.trim();
    let Some(body) = s.strip_suffix('i') else {
        return s.parse().ok().map(|re| C64::new(re, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let imag = |t: &str| match t {
        "" | "+" => Some(1.0),
        "-" => Some(-1.0),
        t => t.parse().ok(),
    };
    match split {
        Some(k) => Some(C64::new(body[..k].parse().ok()?, imag(&body[k..])?)),
        None => Some(C64::new(0.0, imag(body)?)),
    }
}

/// Parsed but not yet interpreted configuration document.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigDoc {
    entries: BTreeMap<String, String>,
}

impl ConfigDoc {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut doc = Self::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::ConfigSyntax {
                    key: line.to_string(),
                    reason: format!("line {}: expected `key = value`", lineno + 1),
                });
            };
            let key = key.trim();
            if !KEYS.contains(&key) {
                return Err(CliError::ConfigSyntax {
                    key: key.to_string(),
                    reason: format!("line {}: unknown key", lineno + 1),
                });
            }
            if doc.entries.insert(key.to_string(), value.trim().to_string()).is_some() {
                return Err(CliError::ConfigSyntax {
                    key: key.to_string(),
                    reason: format!("line {}: duplicate key", lineno + 1),
                });
            }
        }
        Ok(doc)
    }

    /// Override one key, as command-line flags do. `samples` and `dt_out`
    /// replace each other.
    pub fn set(&mut self, key: &str, value: impl Into<String>) {
        debug_assert!(KEYS.contains(&key), "unknown key {key}");
        match key {
            "samples" => {
                self.entries.remove("dt_out");
            }
            "dt_out" => {
                self.entries.remove("samples");
            }
            _ => {}
        }
        self.entries.insert(key.to_string(), value.into());
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    fn scalar<T: FromStr>(&self, key: &'static str) -> Result<Option<T>, CliError> {
        self.get(key)
            .map(|v| v.parse::<T>().map_err(|_| syntax(key, format!("cannot parse `{v}`"))))
            .transpose()
    }

    fn list<T>(&self, key: &'static str, item: impl Fn(&str) -> Option<T>) -> Result<Option<Vec<T>>, CliError> {
        let Some(v) = self.get(key) else {
            return Ok(None);
        };
        if v.is_empty() {
            return Ok(Some(Vec::new()));
        }
        v.split(',')
            .map(|s| item(s.trim()).ok_or_else(|| syntax(key, format!("cannot parse list entry `{}`", s.trim()))))
            .collect::<Result<Vec<T>, _>>()
            .map(Some)
    }

    pub fn into_config(self) -> Result<RunConfig, CliError> {
        let defaults = RunConfig::default();
        let half_width = self.scalar::<usize>("half_width")?.unwrap_or(defaults.half_width);
        let gamma = self
            .list("gamma", |s| s.parse::<f64>().ok())?
            .unwrap_or_else(|| default_rates(half_width));
        let omega_bar = self.scalar::<f64>("omega_bar")?.unwrap_or(defaults.omega_bar);
        let initial = self
            .list("initial", parse_complex)?
            .unwrap_or_else(|| central_state(half_width));
        let t_max = self.scalar::<f64>("t_max")?.unwrap_or(defaults.t_max);
        let samples = self.scalar::<usize>("samples")?;
        let dt_out = self.scalar::<f64>("dt_out")?;
        let threshold = self.scalar::<f64>("threshold")?.unwrap_or(defaults.threshold);
        let sweep_param = self
            .get("sweep_param")
            .map(|v| v.parse::<SweepParam>().map_err(|e| syntax("sweep_param", e)))
            .transpose()?;
        let sweep_values = self.list("sweep_values", |s| s.parse::<f64>().ok())?;
        let probe_time = self.scalar::<f64>("probe_time")?;
        let output = self.get("output").filter(|s| !s.is_empty()).map(PathBuf::from);
        let format = match self.get("format") {
            None => defaults.format,
            Some(v) => v
                .parse()
                .map_err(|_| syntax("format", format!("expected csv or json, got `{v}`")))?,
        };

        if !(omega_bar.is_finite() && omega_bar >= 0.0) {
            return Err(range("omega_bar", "must be finite and nonnegative"));
        }
        if !(t_max.is_finite() && t_max > 0.0) {
            return Err(range("t_max", "must be positive"));
        }
        let grid = match (samples, dt_out) {
            (Some(_), Some(_)) => return Err(range("dt_out", "conflicts with `samples`")),
            (_, Some(dt)) if !(dt.is_finite() && dt > 0.0 && dt <= t_max) => {
                return Err(range("dt_out", "must lie in (0, t_max]"))
            }
            (_, Some(dt)) => OutputGrid::Step(dt),
            (Some(n), None) if n < 2 => return Err(range("samples", "need at least 2")),
            (Some(n), None) => OutputGrid::Samples(n),
            (None, None) => defaults.grid,
        };
        if !(threshold.is_finite() && threshold > 0.0) {
            return Err(range("threshold", "must be positive"));
        }

        let sweep = match (sweep_param, sweep_values) {
            (None, None) => {
                if probe_time.is_some() {
                    return Err(range("probe_time", "only meaningful with a sweep"));
                }
                None
            }
            (None, Some(_)) => return Err(range("sweep_param", "required when sweep_values is set")),
            (Some(_), None) => return Err(range("sweep_values", "required when sweep_param is set")),
            (Some(param), Some(values)) => {
                if values.is_empty() {
                    return Err(range("sweep_values", "must not be empty"));
                }
                if values.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
                    return Err(range("sweep_values", "must be finite and nonnegative"));
                }
                let probe_time = probe_time.unwrap_or(param.default_probe_time());
                if !(probe_time.is_finite() && probe_time >= 0.0) {
                    return Err(range("probe_time", "must be finite and nonnegative"));
                }
                Some(SweepSpec {
                    param,
                    values,
                    probe_time,
                })
            }
        };

        let config = RunConfig {
            half_width,
            gamma,
            omega_bar,
            initial,
            t_max,
            grid,
            threshold,
            sweep,
            output,
            format,
        };
        validate(config.params()).map_err(|e| match e {
            CoreError::NegativeRate { .. } => range("gamma", e.to_string()),
            CoreError::ShapeMismatch { field, .. } => range(field, e.to_string()),
            CoreError::UnphysicalInitialNorm(_) => range("initial", e.to_string()),
            other => CliError::Simulation(other),
        })?;
        Ok(config)
    }
}

fn syntax(key: &str, reason: impl Into<String>) -> CliError {
    CliError::ConfigSyntax {
        key: key.to_string(),
        reason: reason.into(),
    }
}

fn range(key: &str, reason: impl Into<String>) -> CliError {
    CliError::ConfigRange {
        key: key.to_string(),
        reason: reason.into(),
    }
}

/// Parse a configuration document and apply defaults.
pub fn parse_config(text: &str) -> Result<RunConfig, CliError> {
    ConfigDoc::parse(text)?.into_config()
}
