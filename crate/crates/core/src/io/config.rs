//! Sectioned `key = value` run configuration.
//!
//! ```text
//! # comments start with '#'
//! [params]
//! delta1 = -1.0
//! p1 = 0.9
//!
//! [run]
//! command = sweep
//! sweep = fig2
//! format = csv
//! svg = true
//! slabs = 200
//! omega = 0.0, 0.5
//!
//! [tolerances]
//! residual_tol = 1e-13
//!
//! [sweep]            # only with `sweep = custom`
//! axis = amplitude
//! start = 0.05
//! stop = 10
//! points = 201
//! spacing = linear
//! n0_per_axis = 3e16
//! gamma0_per_axis = 0.001
//! ```
//!
//! Unknown sections or keys, duplicate keys and malformed values are
//! rejected with the offending line number.

use std::fmt::Write as _;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::experiments::{self, linspace, logspace, ScaledParam, Scaling, SweepAxis, SweepSpec};
use crate::params::SystemParams;
use crate::propagation::DEFAULT_SLABS;
use crate::steady::SteadyStateOptions;

pub const PARAM_KEYS: [&str; 17] = [
    "gamma1",
    "gamma2",
    "gamma3",
    "gamma4",
    "gamma0",
    "gamma_phi",
    "p1",
    "p2",
    "omega42",
    "delta1",
    "g",
    "a1_mean",
    "a2_mean",
    "n0",
    "length",
    "radius",
    "rate_unit",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Steady,
    Spectrum,
    Sweep,
    Validate,
    Calibrate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum SweepSelector {
    Fig2,
    Fig2Inset,
    Fig3,
    Fig3b,
    Fig4,
    Custom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CustomSweep {
    pub axis: SweepAxis,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    pub spacing: Spacing,
    pub scalings: Vec<Scaling>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub params: SystemParams,
    pub command: Option<Command>,
    pub sweep: SweepSelector,
    pub custom: Option<CustomSweep>,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub svg: bool,
    pub slabs: usize,
    pub omega: Vec<f64>,
    pub validate_every: Option<usize>,
    pub tolerances: SteadyStateOptions,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            params: SystemParams::default(),
            command: None,
            sweep: SweepSelector::Fig2,
            custom: None,
            out: None,
            format: Format::Csv,
            svg: false,
            slabs: DEFAULT_SLABS,
            omega: vec![0.0],
            validate_every: None,
            tolerances: SteadyStateOptions::default(),
        }
    }
}

impl RunConfig {
    /// Sweep specification selected by this config.
    pub fn sweep_spec(&self) -> Result<SweepSpec> {
        let base = &self.params;
        let mut spec = match self.sweep {
            SweepSelector::Fig2 => experiments::fig2(base),
            SweepSelector::Fig2Inset => experiments::fig2_inset(base),
            SweepSelector::Fig3 => experiments::fig3(base),
            SweepSelector::Fig3b => experiments::fig3b(base),
            SweepSelector::Fig4 => experiments::fig4(base),
            SweepSelector::Custom => {
                let c = self
                    .custom
                    .as_ref()
                    .ok_or_else(|| Error::InvalidSweep("`sweep = custom` needs a [sweep] section".into()))?;
                let grid = match c.spacing {
                    Spacing::Linear => linspace(c.start, c.stop, c.points),
                    Spacing::Log => logspace(c.start, c.stop, c.points),
                };
                let mut spec = SweepSpec::new("custom", *base, c.axis, grid);
                spec.scalings = c.scalings.clone();
                spec
            }
        };
        spec.slabs = self.slabs;
        spec.omega = self.omega.first().copied().unwrap_or(0.0);
        spec.validate_every = self.validate_every;
        spec.steady = self.tolerances;
        spec.check()?;
        Ok(spec)
    }
}

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Config { line, message: message.into() }
}

fn parse_f64(line: usize, key: &str, v: &str) -> Result<f64> {
    match v.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        _ => Err(err(line, format!("`{key}`: malformed number `{v}`"))),
    }
}

fn parse_usize(line: usize, key: &str, v: &str) -> Result<usize> {
    v.parse().map_err(|_| err(line, format!("`{key}`: expected a non-negative integer, got `{v}`")))
}

fn parse_bool(line: usize, key: &str, v: &str) -> Result<bool> {
    v.parse().map_err(|_| err(line, format!("`{key}`: expected true or false, got `{v}`")))
}

fn parse_enum<T: clap::ValueEnum>(line: usize, key: &str, v: &str) -> Result<T> {
    T::from_str(v, false).map_err(|_| {
        let options: Vec<String> = T::value_variants()
            .iter()
            .filter_map(|x| x.to_possible_value())
            .map(|p| p.get_name().to_string())
            .collect();
        err(line, format!("`{key}`: unknown value `{v}` (expected one of {})", options.join(", ")))
    })
}

#[derive(Default)]
struct SweepKeys {
    axis: Option<SweepAxis>,
    start: Option<f64>,
    stop: Option<f64>,
    points: Option<usize>,
    spacing: Option<Spacing>,
    n0: Option<f64>,
    gamma0: Option<f64>,
    header: usize,
}

pub fn parse_config(text: &str) -> Result<RunConfig> {
    let mut cfg = RunConfig::default();
    let mut params = serde_json::to_value(cfg.params)?;
    let mut param_lines: Vec<(String, usize)> = Vec::new();
    let mut seen: Vec<(String, String)> = Vec::new();
    let mut section: Option<String> = None;
    let mut sweep: Option<SweepKeys> = None;
    let mut params_header = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(name) = content.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            let name = name.trim();
            if !["params", "run", "tolerances", "sweep"].contains(&name) {
                return Err(err(line, format!("unknown section [{name}]")));
            }
            if seen.iter().any(|(s, k)| s == name && k.is_empty()) {
                return Err(err(line, format!("section [{name}] repeated")));
            }
            seen.push((name.to_string(), String::new()));
            match name {
                "sweep" => sweep = Some(SweepKeys { header: line, ..Default::default() }),
                "params" => params_header = line,
                _ => {}
            }
            section = Some(name.to_string());
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(err(line, format!("expected `key = value`, got `{content}`")));
        };
        let (key, value) = (key.trim(), value.trim());
        let Some(sec) = section.as_deref() else {
            return Err(err(line, format!("`{key}` appears before any section header")));
        };
        if seen.iter().any(|(s, k)| s == sec && k == key) {
            return Err(err(line, format!("duplicate key `{key}` in [{sec}]")));
        }
        seen.push((sec.to_string(), key.to_string()));

        match sec {
            "params" => {
                if !PARAM_KEYS.contains(&key) {
                    return Err(err(line, format!("unknown parameter `{key}`")));
                }
                params[key] = serde_json::Value::from(parse_f64(line, key, value)?);
                param_lines.push((key.to_string(), line));
            }
            "run" => match key {
                "command" => cfg.command = Some(parse_enum(line, key, value)?),
                "sweep" => cfg.sweep = parse_enum(line, key, value)?,
                "out" => cfg.out = Some(PathBuf::from(value)),
                "format" => cfg.format = parse_enum(line, key, value)?,
                "svg" => cfg.svg = parse_bool(line, key, value)?,
                "slabs" => {
                    cfg.slabs = parse_usize(line, key, value)?;
                    if cfg.slabs == 0 {
                        return Err(err(line, "`slabs` must be at least 1"));
                    }
                }
                "omega" => {
                    cfg.omega = value.split(',').map(|v| parse_f64(line, key, v.trim())).collect::<Result<Vec<_>>>()?;
                }
                "validate_every" => cfg.validate_every = Some(parse_usize(line, key, value)?),
                _ => return Err(err(line, format!("unknown key `{key}` in [run]"))),
            },
            "tolerances" => match key {
                "degeneracy_tol" => cfg.tolerances.degeneracy_tol = parse_f64(line, key, value)?,
                "residual_tol" => cfg.tolerances.residual_tol = parse_f64(line, key, value)?,
                "max_doublings" => cfg.tolerances.max_doublings = parse_usize(line, key, value)?,
                _ => return Err(err(line, format!("unknown key `{key}` in [tolerances]"))),
            },
            "sweep" => {
                let s = sweep.as_mut().expect("section header seen");
                match key {
                    "axis" => {
                        s.axis = Some(
                            SweepAxis::parse(value)
                                .ok_or_else(|| err(line, format!("`axis`: unknown axis `{value}`")))?,
                        )
                    }
                    "start" => s.start = Some(parse_f64(line, key, value)?),
                    "stop" => s.stop = Some(parse_f64(line, key, value)?),
                    "points" => s.points = Some(parse_usize(line, key, value)?),
                    "spacing" => {
                        s.spacing = Some(match value {
                            "linear" => Spacing::Linear,
                            "log" => Spacing::Log,
                            _ => return Err(err(line, format!("`spacing`: expected linear or log, got `{value}`"))),
                        })
                    }
                    "n0_per_axis" => s.n0 = Some(parse_f64(line, key, value)?),
                    "gamma0_per_axis" => s.gamma0 = Some(parse_f64(line, key, value)?),
                    _ => return Err(err(line, format!("unknown key `{key}` in [sweep]"))),
                }
            }
            _ => unreachable!("sections are checked at their header"),
        }
    }

    cfg.params = serde_json::from_value(params)?;
    if let Err(Error::InvalidParam { name, reason }) = cfg.params.validate() {
        let line = param_lines.iter().find(|(k, _)| k == name).map_or(params_header, |(_, l)| *l);
        return Err(err(line, format!("`{name}`: {reason}")));
    }

    if let Some(s) = sweep {
        let missing = |what: &str| err(s.header, format!("[sweep] is missing `{what}`"));
        let mut scalings = Vec::new();
        if let Some(c) = s.n0 {
            scalings.push(Scaling { target: ScaledParam::N0, coefficient: c });
        }
        if let Some(c) = s.gamma0 {
            scalings.push(Scaling { target: ScaledParam::Gamma0, coefficient: c });
        }
        let custom = CustomSweep {
            axis: s.axis.ok_or_else(|| missing("axis"))?,
            start: s.start.ok_or_else(|| missing("start"))?,
            stop: s.stop.ok_or_else(|| missing("stop"))?,
            points: s.points.ok_or_else(|| missing("points"))?,
            spacing: s.spacing.unwrap_or(Spacing::Linear),
            scalings,
        };
        if custom.spacing == Spacing::Log && !(custom.start > 0.0 && custom.stop > 0.0) {
            return Err(err(s.header, "log spacing needs positive `start` and `stop`"));
        }
        cfg.custom = Some(custom);
    }
    if cfg.sweep == SweepSelector::Custom && cfg.custom.is_none() {
        return Err(err(0, "`sweep = custom` needs a [sweep] section"));
    }
    Ok(cfg)
}

fn value_name<T: clap::ValueEnum>(v: &T) -> String {
    v.to_possible_value().map(|p| p.get_name().to_string()).unwrap_or_default()
}

/// Canonical text form; `parse_config(&print_config(c))` returns `c`.
pub fn print_config(cfg: &RunConfig) -> String {
    let mut s = String::new();
    let params = serde_json::to_value(cfg.params).expect("plain struct serializes");
    s.push_str("[params]\n");
    for key in PARAM_KEYS {
        let v = params[key].as_f64().expect("numeric field");
        let _ = writeln!(s, "{key} = {v:?}");
    }
    s.push_str("\n[run]\n");
    if let Some(c) = cfg.command {
        let _ = writeln!(s, "command = {}", value_name(&c));
    }
    let _ = writeln!(s, "sweep = {}", value_name(&cfg.sweep));
    if let Some(out) = &cfg.out {
        let _ = writeln!(s, "out = {}", out.display());
    }
    let _ = writeln!(s, "format = {}", value_name(&cfg.format));
    let _ = writeln!(s, "svg = {}", cfg.svg);
    let _ = writeln!(s, "slabs = {}", cfg.slabs);
    let omega: Vec<String> = cfg.omega.iter().map(|w| format!("{w:?}")).collect();
    let _ = writeln!(s, "omega = {}", omega.join(", "));
    if let Some(n) = cfg.validate_every {
        let _ = writeln!(s, "validate_every = {n}");
    }
    s.push_str("\n[tolerances]\n");
    let _ = writeln!(s, "degeneracy_tol = {:?}", cfg.tolerances.degeneracy_tol);
    let _ = writeln!(s, "residual_tol = {:?}", cfg.tolerances.residual_tol);
    let _ = writeln!(s, "max_doublings = {}", cfg.tolerances.max_doublings);
    if let Some(c) = &cfg.custom {
        s.push_str("\n[sweep]\n");
        let _ = writeln!(s, "axis = {}", c.axis.name());
        let _ = writeln!(s, "start = {:?}", c.start);
        let _ = writeln!(s, "stop = {:?}", c.stop);
        let _ = writeln!(s, "points = {}", c.points);
        let _ = writeln!(s, "spacing = {}", if c.spacing == Spacing::Log { "log" } else { "linear" });
        for sc in &c.scalings {
            let _ = writeln!(s, "{}_per_axis = {:?}", sc.target.name(), sc.coefficient);
        }
    }
    s
}
