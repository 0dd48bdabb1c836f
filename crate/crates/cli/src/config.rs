//! Run configuration: flat `key = value` lines with dotted keys.
//!
//! ```text
//! # spin system
//! nu.3 = 904.4
//! j.12 = 200.9
//! gamma.2 = 3.977
//! sweep.start = 0
//! sweep.stop = 2pi
//! sweep.count = 21
//! out.sweep = amplitudes.csv
//! tol.verify = 1e-9
//! ```
//!
//! Unset keys keep the built-in defaults, which describe the
//! trichloroethylene sample used in the transfer experiment.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::PathBuf;

use xychain::nmrcompile::{GAMMA_H_OVER_C, TCE_J12, TCE_J13, TCE_J23, TCE_NU3_MINUS_NU1};
use xychain::SpinSystem;

use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub nu: [f64; 3],
    pub j12: f64,
    pub j23: f64,
    pub j13: f64,
    pub gamma: [f64; 3],
    pub sweep_start: f64,
    pub sweep_stop: f64,
    pub sweep_count: usize,
    pub out_compile: Option<PathBuf>,
    pub out_sweep: Option<PathBuf>,
    pub out_pst: Option<PathBuf>,
    pub tol_verify: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            nu: [0.0, 0.0, TCE_NU3_MINUS_NU1],
            j12: TCE_J12,
            j23: TCE_J23,
            j13: TCE_J13,
            gamma: [1.0, GAMMA_H_OVER_C, 1.0],
            sweep_start: 0.0,
            sweep_stop: 2.0 * PI,
            sweep_count: 21,
            out_compile: None,
            out_sweep: None,
            out_pst: None,
            tol_verify: 1e-9,
        }
    }
}

/// Parses an angle in radians, optionally written as a multiple of π:
/// `0.5pi`, `-pi`, `2π`, `1.25`.
pub fn parse_angle(s: &str) -> Result<f64, String> {
    let t = s.trim();
    let (num, scale) = match t.strip_suffix("pi").or_else(|| t.strip_suffix('π')) {
        Some(head) => (head.trim(), PI),
        None => (t, 1.0),
    };
    let coef = match num {
        "" | "+" => 1.0,
        "-" => -1.0,
        n => n.parse::<f64>().map_err(|_| format!("invalid angle {s:?}"))?,
    };
    let x = coef * scale;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(format!("invalid angle {s:?}"))
    }
}

fn parse_float(key: &str, v: &str) -> Result<f64, String> {
    v.parse::<f64>()
        .ok()
        .filter(|x| x.is_finite())
        .ok_or_else(|| format!("{key}: invalid number {v:?}"))
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut cfg = Self::default();
        let mut seen = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: String| CliError::Config { line: i + 1, msg };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(format!("expected key = value, got {line:?}")))?;
            let (key, value) = (key.trim(), value.trim());
            if let Some(prev) = seen.insert(key.to_string(), i + 1) {
                return Err(err(format!("{key} already set on line {prev}")));
            }
            cfg.set(key, value).map_err(err)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn set(&mut self, key: &str, v: &str) -> Result<(), String> {
        let float = |v| parse_float(key, v);
        match key {
            "nu.1" => self.nu[0] = float(v)?,
            "nu.2" => self.nu[1] = float(v)?,
            "nu.3" => self.nu[2] = float(v)?,
            "j.12" | "j.21" => self.j12 = float(v)?,
            "j.23" | "j.32" => self.j23 = float(v)?,
            "j.13" | "j.31" => self.j13 = float(v)?,
            "gamma.1" => self.gamma[0] = float(v)?,
            "gamma.2" => self.gamma[1] = float(v)?,
            "gamma.3" => self.gamma[2] = float(v)?,
            "sweep.start" => self.sweep_start = parse_angle(v)?,
            "sweep.stop" => self.sweep_stop = parse_angle(v)?,
            "sweep.count" => {
                self.sweep_count = v.parse().map_err(|_| format!("{key}: invalid count {v:?}"))?
            }
            "out.compile" => self.out_compile = Some(PathBuf::from(v)),
            "out.sweep" => self.out_sweep = Some(PathBuf::from(v)),
            "out.pst" => self.out_pst = Some(PathBuf::from(v)),
            "tol.verify" => self.tol_verify = float(v)?,
            other => return Err(format!("unknown key {other:?}")),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |msg: &str| Err(CliError::Invalid(msg.to_string()));
        if self.sweep_count < 1 {
            return bad("sweep.count must be at least 1");
        }
        if self.sweep_stop < self.sweep_start {
            return bad("sweep.stop must not be below sweep.start");
        }
        if !(self.tol_verify > 0.0) {
            return bad("tolerance must be positive");
        }
        self.spin_system()?;
        Ok(())
    }

    pub fn spin_system(&self) -> Result<SpinSystem, CliError> {
        Ok(SpinSystem::three_spin(
            self.nu, self.j12, self.j23, self.j13, self.gamma,
        )?)
    }

    /// Evenly spaced grid including both ends; a single point sits at `start`.
    pub fn grid(&self) -> Vec<f64> {
        let n = self.sweep_count;
        if n == 1 {
            return vec![self.sweep_start];
        }
        let step = (self.sweep_stop - self.sweep_start) / (n - 1) as f64;
        (0..n)
            .map(|k| {
                if k == n - 1 {
                    self.sweep_stop
                } else {
                    self.sweep_start + k as f64 * step
                }
            })
            .collect()
    }
}
