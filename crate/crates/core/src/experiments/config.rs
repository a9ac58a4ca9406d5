//! Flat key-value run configuration.
//!
//! ```toml
//! lambda_f = 2e-3
//! p_t_dbm = 20
//! n_f = 4
//! beta_t = 1.0
//! sweep_param = "lambda_f"
//! sweep_start = 1e-4
//! sweep_stop = 1e-2
//! sweep_points = 9
//! sweep_scale = "log"
//! ```
//!
//! Every key is optional; omitted keys keep the defaults of
//! [`RunConfig::default`]. A second sweep axis uses the `sweep2_` prefix and
//! is crossed with the first.

use crate::error::{Result, SecnetError};
use crate::montecarlo::SimSettings;
use crate::network::{dbm_to_linear, NetworkConfig};
use crate::optimizer::QoSTargets;
use serde::Serialize;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub enum Scale {
    #[default]
    Linear,
    Log,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepAxis {
    pub param: String,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    pub scale: Scale,
}

impl SweepAxis {
    pub fn new(param: &str, start: f64, stop: f64, points: usize, scale: Scale) -> Result<Self> {
        let axis = Self { param: param.to_string(), start, stop, points, scale };
        axis.validate()?;
        Ok(axis)
    }

    pub fn validate(&self) -> Result<()> {
        let p = Param::lookup(&self.param)
            .ok_or_else(|| SecnetError::Config(format!("unknown sweep parameter `{}`", self.param)))?;
        if self.points < 2 {
            return Err(SecnetError::Config(format!("sweep over `{}` needs at least 2 points", self.param)));
        }
        if !(self.start.is_finite() && self.stop.is_finite()) || self.start == self.stop {
            return Err(SecnetError::Config(format!(
                "empty sweep range for `{}`: [{}, {}]",
                self.param, self.start, self.stop
            )));
        }
        if self.scale == Scale::Log && !(self.start > 0.0 && self.stop > 0.0) {
            return Err(SecnetError::Config(format!("log sweep over `{}` needs positive endpoints", self.param)));
        }
        if p.integer {
            for v in self.values() {
                if (v - v.round()).abs() > 1e-9 {
                    return Err(SecnetError::Config(format!("sweep over integer `{}` hits non-integer {v}", self.param)));
                }
            }
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        let n = self.points;
        (0..n)
            .map(|i| {
                let t = i as f64 / (n - 1) as f64;
                match self.scale {
                    Scale::Linear => self.start + t * (self.stop - self.start),
                    Scale::Log => (self.start.ln() + t * (self.stop.ln() - self.start.ln())).exp(),
                }
            })
            .collect()
    }
}

/// Network, targets, thresholds and simulation settings for one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub network: NetworkConfig,
    pub targets: QoSTargets,
    pub sim: SimSettings,
    pub beta_t: f64,
    pub beta_c: f64,
    pub beta_e: f64,
    pub sweeps: Vec<SweepAxis>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            network: NetworkConfig::default(),
            targets: QoSTargets::default(),
            sim: SimSettings::default(),
            beta_t: 1.0,
            beta_c: 1.0,
            beta_e: 1.0,
            sweeps: Vec::new(),
        }
    }
}

/// A numeric key that can be set from a config file or swept.
#[derive(Debug, Clone, Copy)]
pub struct Param {
    pub name: &'static str,
    pub unit: &'static str,
    pub integer: bool,
}

const PARAMS: &[Param] = &[
    Param { name: "lambda_h", unit: "1/area", integer: false },
    Param { name: "lambda_f", unit: "1/area", integer: false },
    Param { name: "lambda_e", unit: "1/area", integer: false },
    Param { name: "p_h", unit: "mW", integer: false },
    Param { name: "p_f", unit: "mW", integer: false },
    Param { name: "p_t", unit: "mW", integer: false },
    Param { name: "p_h_dbm", unit: "dBm", integer: false },
    Param { name: "p_f_dbm", unit: "dBm", integer: false },
    Param { name: "p_t_dbm", unit: "dBm", integer: false },
    Param { name: "alpha", unit: "-", integer: false },
    Param { name: "n_f", unit: "antennas", integer: true },
    Param { name: "n_h", unit: "antennas", integer: true },
    Param { name: "n_e", unit: "antennas", integer: true },
    Param { name: "n_t", unit: "antennas", integer: true },
    Param { name: "n_j", unit: "streams", integer: true },
    Param { name: "d_f", unit: "length", integer: false },
    Param { name: "d_h", unit: "length", integer: false },
    Param { name: "sigma", unit: "-", integer: false },
    Param { name: "sigma_c", unit: "-", integer: false },
    Param { name: "epsilon", unit: "-", integer: false },
    Param { name: "t_c", unit: "bit/s/Hz/area", integer: false },
    Param { name: "beta_t", unit: "-", integer: false },
    Param { name: "beta_c", unit: "-", integer: false },
    Param { name: "beta_e", unit: "-", integer: false },
    Param { name: "window_radius", unit: "length", integer: false },
    Param { name: "confidence_level", unit: "-", integer: false },
];

impl Param {
    pub fn lookup(name: &str) -> Option<Param> {
        PARAMS.iter().copied().find(|p| p.name == name)
    }
}

impl RunConfig {
    /// Sets a numeric parameter by name.
    pub fn set(&mut self, key: &str, v: f64) -> Result<()> {
        let p = Param::lookup(key).ok_or_else(|| SecnetError::Config(format!("unknown key `{key}`")))?;
        let count = || -> Result<usize> {
            if v >= 0.0 && (v - v.round()).abs() < 1e-9 {
                Ok(v.round() as usize)
            } else {
                Err(SecnetError::Config(format!("`{key}` must be a non-negative integer, got {v}")))
            }
        };
        let n = &mut self.network;
        match p.name {
            "lambda_h" => n.lambda_h = v,
            "lambda_f" => n.lambda_f = v,
            "lambda_e" => n.lambda_e = v,
            "p_h" => n.p_h = v,
            "p_f" => n.p_f = v,
            "p_t" => n.p_t = v,
            "p_h_dbm" => n.p_h = dbm_to_linear(v),
            "p_f_dbm" => n.p_f = dbm_to_linear(v),
            "p_t_dbm" => n.p_t = dbm_to_linear(v),
            "alpha" => n.alpha = v,
            "n_f" => n.n_f = count()?,
            "n_h" => n.n_h = count()?,
            "n_e" => n.n_e = count()?,
            "n_t" => n.n_t = count()?,
            "n_j" => n.n_j = count()?,
            "d_f" => n.d_f = v,
            "d_h" => n.d_h = v,
            "sigma" => self.targets.sigma = v,
            "sigma_c" => self.targets.sigma_c = v,
            "epsilon" => self.targets.epsilon = v,
            "t_c" => self.targets.t_c = v,
            "beta_t" => self.beta_t = v,
            "beta_c" => self.beta_c = v,
            "beta_e" => self.beta_e = v,
            "window_radius" => self.sim.window_radius = v,
            "confidence_level" => self.sim.confidence_level = v,
            _ => unreachable!("PARAMS and set() list the same keys"),
        }
        Ok(())
    }

    /// Current value of a parameter, in the unit it is set in.
    pub fn get(&self, key: &str) -> Option<f64> {
        let n = &self.network;
        let dbm = |p: f64| 10.0 * p.log10();
        Some(match key {
            "lambda_h" => n.lambda_h,
            "lambda_f" => n.lambda_f,
            "lambda_e" => n.lambda_e,
            "p_h" => n.p_h,
            "p_f" => n.p_f,
            "p_t" => n.p_t,
            "p_h_dbm" => dbm(n.p_h),
            "p_f_dbm" => dbm(n.p_f),
            "p_t_dbm" => dbm(n.p_t),
            "alpha" => n.alpha,
            "n_f" => n.n_f as f64,
            "n_h" => n.n_h as f64,
            "n_e" => n.n_e as f64,
            "n_t" => n.n_t as f64,
            "n_j" => n.n_j as f64,
            "d_f" => n.d_f,
            "d_h" => n.d_h,
            "sigma" => self.targets.sigma,
            "sigma_c" => self.targets.sigma_c,
            "epsilon" => self.targets.epsilon,
            "t_c" => self.targets.t_c,
            "beta_t" => self.beta_t,
            "beta_c" => self.beta_c,
            "beta_e" => self.beta_e,
            "window_radius" => self.sim.window_radius,
            "confidence_level" => self.sim.confidence_level,
            _ => return None,
        })
    }

    /// Parses a config file body on top of `self`.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        let table: toml::Table = text.parse().map_err(|e: toml::de::Error| {
            let at = e.span().map(|s| line_col(text, s.start)).unwrap_or((1, 1));
            SecnetError::Config(format!("line {}, column {}: {}", at.0, at.1, e.message()))
        })?;
        let mut axes: [SweepDraft; 2] = Default::default();
        for (key, value) in &table {
            let line = key_line(text, key);
            let fail = |msg: String| SecnetError::Config(format!("line {line}: {msg}"));
            let (slot, field) = match key.strip_prefix("sweep2_") {
                Some(f) => (Some(1), f),
                None => match key.strip_prefix("sweep_") {
                    Some(f) => (Some(0), f),
                    None => (None, key.as_str()),
                },
            };
            if let Some(i) = slot {
                axes[i].line = axes[i].line.or(Some(line));
                match field {
                    "param" => axes[i].param = Some(as_str(value).ok_or_else(|| fail(format!("`{key}` must be a string")))?),
                    "scale" => {
                        axes[i].scale = match as_str(value).as_deref() {
                            Some("linear") => Scale::Linear,
                            Some("log") => Scale::Log,
                            _ => return Err(fail(format!("`{key}` must be \"linear\" or \"log\""))),
                        }
                    }
                    "start" => axes[i].start = Some(as_f64(value).ok_or_else(|| fail(format!("`{key}` must be a number")))?),
                    "stop" => axes[i].stop = Some(as_f64(value).ok_or_else(|| fail(format!("`{key}` must be a number")))?),
                    "points" => {
                        axes[i].points = Some(match value {
                            toml::Value::Integer(n) if *n >= 0 => *n as usize,
                            _ => return Err(fail(format!("`{key}` must be a non-negative integer"))),
                        })
                    }
                    _ => return Err(fail(format!("unknown key `{key}`"))),
                }
                continue;
            }
            match key.as_str() {
                "trials" | "seed" => {
                    let n = match value {
                        toml::Value::Integer(n) if *n >= 0 => *n as u64,
                        _ => return Err(fail(format!("`{key}` must be a non-negative integer"))),
                    };
                    if key == "trials" {
                        self.sim.trials = n;
                    } else {
                        self.sim.seed = n;
                    }
                }
                "regularize" | "far_field" => {
                    let b = value.as_bool().ok_or_else(|| fail(format!("`{key}` must be true or false")))?;
                    if key == "regularize" {
                        self.sim.regularize = b;
                    } else {
                        self.sim.far_field = b;
                    }
                }
                _ => {
                    if Param::lookup(key).is_none() {
                        return Err(fail(format!("unknown key `{key}`")));
                    }
                    let v = as_f64(value).ok_or_else(|| fail(format!("`{key}` must be a number")))?;
                    self.set(key, v).map_err(|e| match e {
                        SecnetError::Config(m) => fail(m),
                        other => other,
                    })?;
                }
            }
        }
        for (i, draft) in axes.into_iter().enumerate() {
            if let Some(axis) = draft.finish(if i == 0 { "sweep_" } else { "sweep2_" })? {
                self.sweeps.push(axis);
            }
        }
        Ok(())
    }
}

#[derive(Default)]
struct SweepDraft {
    line: Option<usize>,
    param: Option<String>,
    start: Option<f64>,
    stop: Option<f64>,
    points: Option<usize>,
    scale: Scale,
}

impl SweepDraft {
    fn finish(self, prefix: &str) -> Result<Option<SweepAxis>> {
        let Some(line) = self.line else { return Ok(None) };
        let need = |name: &str| SecnetError::Config(format!("line {line}: sweep needs `{prefix}{name}`"));
        let axis = SweepAxis {
            param: self.param.ok_or_else(|| need("param"))?,
            start: self.start.ok_or_else(|| need("start"))?,
            stop: self.stop.ok_or_else(|| need("stop"))?,
            points: self.points.ok_or_else(|| need("points"))?,
            scale: self.scale,
        };
        axis.validate().map_err(|e| match e {
            SecnetError::Config(m) => SecnetError::Config(format!("line {line}: {m}")),
            other => other,
        })?;
        Ok(Some(axis))
    }
}

fn as_f64(v: &toml::Value) -> Option<f64> {
    match v {
        toml::Value::Float(x) => Some(*x),
        toml::Value::Integer(n) => Some(*n as f64),
        _ => None,
    }
}

fn as_str(v: &toml::Value) -> Option<String> {
    v.as_str().map(str::to_string)
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

fn key_line(text: &str, key: &str) -> usize {
    text.lines()
        .position(|l| {
            let t = l.trim_start();
            t.strip_prefix(key).is_some_and(|rest| rest.trim_start().starts_with('='))
        })
        .map_or(0, |i| i + 1)
}
