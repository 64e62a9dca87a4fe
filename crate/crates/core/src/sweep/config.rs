use std::f64::consts::PI;
use std::path::PathBuf;

use crate::differentiation::FdSteps;
use crate::error::{Error, Result};
use crate::kinematics::{Constants, ProcessKind};
use crate::state::InitialState;

/// Everything needed to run one grid sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub process: ProcessKind,
    pub initial: InitialState,
    pub p_min: f64,
    pub p_max: f64,
    pub p_step: f64,
    pub theta_min: f64,
    pub theta_max: f64,
    pub theta_step: f64,
    pub phi: f64,
    /// Number of measurements in the Cramér–Rao bound.
    pub n: u64,
    pub fd_steps: FdSteps,
    pub out: Option<PathBuf>,
    /// `None` uses every available core.
    pub workers: Option<usize>,
    pub consts: Constants,
}

impl SweepConfig {
    /// Default grid for a process: `p ∈ [0.01, 5]` MeV in 0.01 MeV steps,
    /// `θ` in steps of π/500 up to π, starting at π/500 for e-μ and at 0
    /// for Compton.
    pub fn defaults(process: ProcessKind) -> Self {
        let theta_step = PI / 500.0;
        SweepConfig {
            process,
            initial: InitialState::Mixed,
            p_min: 0.01,
            p_max: 5.0,
            p_step: 0.01,
            theta_min: match process {
                ProcessKind::ElectronMuon => theta_step,
                ProcessKind::Compton => 0.0,
            },
            theta_max: PI,
            theta_step,
            phi: 0.0,
            n: 1,
            fd_steps: FdSteps::default(),
            out: None,
            workers: None,
            consts: Constants::CODATA,
        }
    }

    /// Sets one `key = value` pair. Keys are the long flag names; `_` and
    /// `-` are interchangeable.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let token = || format!("{key}={value}");
        let num = || parse_number(value).ok_or_else(|| Error::config(token(), "malformed number"));
        match normalize_key(key).as_str() {
            "process" => {
                let kind: ProcessKind = value.parse()?;
                if kind != self.process {
                    return Err(Error::config(token(), "process must be chosen before other keys"));
                }
            }
            "initial" => self.initial = value.parse()?,
            "p-min" => self.p_min = num()?,
            "p-max" => self.p_max = num()?,
            "p-step" => self.p_step = num()?,
            "theta-min" => self.theta_min = num()?,
            "theta-max" => self.theta_max = num()?,
            "theta-step" => self.theta_step = num()?,
            "phi" => self.phi = num()?,
            "n" => {
                self.n = value
                    .trim()
                    .parse()
                    .map_err(|_| Error::config(token(), "expected a positive integer"))?
            }
            "fd-step-p" => self.fd_steps.h_p = num()?,
            "fd-step-theta" => self.fd_steps.h_theta = num()?,
            "fd-step-phi" => self.fd_steps.h_phi = num()?,
            "workers" => {
                let w: usize = value
                    .trim()
                    .parse()
                    .map_err(|_| Error::config(token(), "expected a positive integer"))?;
                self.workers = Some(w);
            }
            "out" => self.out = Some(PathBuf::from(value.trim())),
            _ => return Err(Error::config(key, "unknown key")),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |token: &str, v: f64, reason: &str| Err(Error::config(format!("{token}={v}"), reason));
        let finite = [
            ("p-min", self.p_min),
            ("p-max", self.p_max),
            ("p-step", self.p_step),
            ("theta-min", self.theta_min),
            ("theta-max", self.theta_max),
            ("theta-step", self.theta_step),
            ("phi", self.phi),
        ];
        if let Some((k, v)) = finite.into_iter().find(|(_, v)| !v.is_finite()) {
            return bad(k, v, "must be finite");
        }
        if !(self.p_step > 0.0) {
            return bad("p-step", self.p_step, "step must be positive");
        }
        if self.p_min < self.p_step * (1.0 - 1e-9) {
            return bad("p-min", self.p_min, "must be at least p-step");
        }
        if self.p_max < self.p_min {
            return bad("p-max", self.p_max, "must not be below p-min");
        }
        if !(self.theta_step > 0.0) {
            return bad("theta-step", self.theta_step, "step must be positive");
        }
        if !self.process.theta_is_admissible(self.theta_min) {
            return bad("theta-min", self.theta_min, "outside the process's angular domain");
        }
        if self.theta_max > PI * (1.0 + 1e-12) || self.theta_max < self.theta_min {
            return bad("theta-max", self.theta_max, "must lie in [theta-min, pi]");
        }
        if self.n == 0 {
            return Err(Error::config("N=0", "must be positive"));
        }
        for (k, h) in [
            ("fd-step-p", self.fd_steps.h_p),
            ("fd-step-theta", self.fd_steps.h_theta),
            ("fd-step-phi", self.fd_steps.h_phi),
        ] {
            if !(h > 0.0) || !h.is_finite() {
                return bad(k, h, "step must be positive");
            }
        }
        if self.workers == Some(0) {
            return Err(Error::config("workers=0", "must be positive"));
        }
        Ok(())
    }

    /// Grid of momenta, MeV.
    pub fn p_grid(&self) -> Vec<f64> {
        grid(self.p_min, self.p_max, self.p_step)
    }

    /// Grid of polar angles, rad.
    pub fn theta_grid(&self) -> Vec<f64> {
        grid(self.theta_min, self.theta_max, self.theta_step)
    }
}

/// `min + k·step` for every `k` that lands within half a step of `max`;
/// values are clamped to `max` so rounding never leaves the domain.
pub fn grid(min: f64, max: f64, step: f64) -> Vec<f64> {
    let count = ((max - min) / step + 0.5).floor() as usize + 1;
    (0..count).map(|k| (min + k as f64 * step).min(max)).collect()
}

fn normalize_key(key: &str) -> String {
    key.trim().trim_start_matches("--").replace('_', "-").to_ascii_lowercase()
}

/// Plain float, `pi`, `pi/x`, `x*pi` or `x/y`.
pub fn parse_number(s: &str) -> Option<f64> {
    let s = s.trim();
    let atom = |a: &str| -> Option<f64> {
        let a = a.trim();
        if a.eq_ignore_ascii_case("pi") {
            Some(PI)
        } else {
            a.parse().ok()
        }
    };
    let v = if let Some((a, b)) = s.split_once('/') {
        atom(a)? / atom(b)?
    } else if let Some((a, b)) = s.split_once('*') {
        atom(a)? * atom(b)?
    } else {
        atom(s)?
    };
    v.is_finite().then_some(v)
}

/// Parses `key = value` lines; blank lines and `#` comments are ignored.
pub fn parse_config_file(text: &str) -> Result<Vec<(String, String)>> {
    let mut pairs = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::config(line, "expected key = value"))?;
        pairs.push((k.trim().to_string(), v.trim().to_string()));
    }
    Ok(pairs)
}

/// Builds a config from file pairs and flag pairs; flags override the file,
/// which overrides the process defaults.
pub fn parse_config(file: &[(String, String)], flags: &[(String, String)]) -> Result<SweepConfig> {
    let is_process = |(k, _): &&(String, String)| normalize_key(k) == "process";
    let process = match flags.iter().find(is_process).or_else(|| file.iter().find(is_process)) {
        Some((_, v)) => v.parse()?,
        None => ProcessKind::ElectronMuon,
    };
    let mut cfg = SweepConfig::defaults(process);
    for (k, v) in file.iter().chain(flags) {
        if normalize_key(k) == "process" {
            continue;
        }
        cfg.set(k, v)?;
    }
    cfg.validate()?;
    Ok(cfg)
}
