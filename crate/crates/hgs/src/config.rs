//! Run configuration for the command line tool.
//!
//! A config file is flat text, one `key = value` per line, `#` starting a
//! comment. Values are applied in the order defaults, file, environment
//! (`HGS_OUTPUT_DIR`, `HGS_WORKERS`), command-line flags; every layer goes
//! through [`RunConfig::set`], so the same range checks apply everywhere.

use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{HgsError, Result};
use crate::model::PhysicalParams;
use crate::orbit::Tolerances;

pub const ENV_OUTPUT_DIR: &str = "HGS_OUTPUT_DIR";
pub const ENV_WORKERS: &str = "HGS_WORKERS";

/// Which special-case slice `scan` sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Case {
    /// ρ = 0, plane (κ, β), numerator G1
    Rho0,
    /// κ = 0, plane (ρ, β), numerator G2
    Kappa0,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanFormula {
    /// G1 for `rho0`, G2 for `kappa0`
    Auto,
    L1Numeric,
    L1Closed,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub beta: f64,
    pub alpha: f64,
    /// ε; when absent, `ratio` (or the command's default) fixes ε/ε_c
    pub epsilon: Option<f64>,
    pub ratio: Option<f64>,
    pub rho: f64,
    pub kappa: f64,

    pub physical: bool,
    pub mass: f64,
    pub arm: f64,
    pub half_edge: f64,
    pub spring: f64,
    pub friction: f64,
    pub gravity: f64,
    pub gear: f64,
    pub torque: f64,
    pub inertia: f64,
    pub load: f64,

    pub rtol: f64,
    pub atol: f64,
    pub degeneracy_tol: f64,

    pub case: Case,
    pub formula: ScanFormula,
    /// points per axis; two entries for a single slice, three for a stack of
    /// α slices (α first)
    pub grid: Vec<usize>,
    pub beta_min: f64,
    pub beta_max: f64,
    pub kappa_max: f64,
    pub rho_max: f64,
    pub alpha_min: f64,
    pub alpha_max: f64,

    pub t_end: f64,
    /// initial distance from P0 along −x for `simulate`
    pub offset: f64,
    /// oracle samples for `lyapunov`
    pub samples: usize,

    pub output_dir: PathBuf,
    /// 0 = one per core
    pub workers: usize,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            beta: 0.5,
            alpha: 1.0,
            epsilon: None,
            ratio: None,
            rho: 0.0,
            kappa: 0.0,
            physical: false,
            mass: 1.0,
            arm: 0.5,
            half_edge: 0.0,
            spring: 0.0,
            friction: 0.5,
            gravity: 9.81,
            gear: 1.0,
            torque: 1.0,
            inertia: 1.0,
            load: 0.5,
            rtol: Tolerances::ORBIT.rel,
            atol: Tolerances::ORBIT.abs,
            degeneracy_tol: 1e-8,
            case: Case::Rho0,
            formula: ScanFormula::Auto,
            grid: vec![101, 101],
            beta_min: 0.05,
            beta_max: 0.95,
            kappa_max: 0.999,
            rho_max: 2.0,
            alpha_min: 0.05,
            alpha_max: 5.0,
            t_end: 200.0,
            offset: 0.01,
            samples: 0,
            output_dir: PathBuf::from("."),
            workers: 0,
            seed: 1,
        }
    }
}

pub const KEYS: &[&str] = &[
    "beta", "alpha", "epsilon", "ratio", "rho", "kappa", "physical", "mass", "arm", "half_edge", "spring",
    "friction", "gravity", "gear", "torque", "inertia", "load", "rtol", "atol", "degeneracy_tol", "case",
    "formula", "grid", "beta_min", "beta_max", "kappa_max", "rho_max", "alpha_min", "alpha_max", "t_end",
    "offset", "samples", "output_dir", "workers", "seed",
];

fn num(key: &str, raw: &str) -> std::result::Result<f64, String> {
    match raw.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(format!("{key}: expected a finite number, got '{raw}'")),
    }
}

fn in_range(key: &str, raw: &str, ok: impl Fn(f64) -> bool, range: &str) -> std::result::Result<f64, String> {
    let v = num(key, raw)?;
    if ok(v) {
        Ok(v)
    } else {
        Err(format!("{key} = {v} is outside {range}"))
    }
}

fn count(key: &str, raw: &str) -> std::result::Result<usize, String> {
    raw.parse::<usize>().map_err(|_| format!("{key}: expected a non-negative integer, got '{raw}'"))
}

fn positive(v: f64) -> bool {
    v > 0.0
}

fn non_negative(v: f64) -> bool {
    v >= 0.0
}

/// `"NxM"` or `"KxNxM"`, every size at least 2.
pub fn parse_grid(raw: &str) -> std::result::Result<Vec<usize>, String> {
    let sizes: Vec<usize> = raw
        .split(['x', 'X'])
        .map(|p| p.trim().parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| format!("grid: expected NxM or KxNxM, got '{raw}'"))?;
    if !(2..=3).contains(&sizes.len()) || sizes.iter().any(|&n| n < 2) {
        return Err(format!("grid: expected 2 or 3 sizes of at least 2, got '{raw}'"));
    }
    Ok(sizes)
}

impl RunConfig {
    /// Set one key from its text form, checking its admissible range.
    pub fn set(&mut self, key: &str, raw: &str) -> std::result::Result<(), String> {
        let raw = raw.trim();
        match key {
            "beta" => self.beta = in_range(key, raw, |v| v > 0.0 && v < 1.0, "(0, 1)")?,
            "alpha" => self.alpha = in_range(key, raw, positive, "(0, inf)")?,
            "epsilon" => self.epsilon = Some(in_range(key, raw, positive, "(0, inf)")?),
            "ratio" => self.ratio = Some(in_range(key, raw, positive, "(0, inf)")?),
            "rho" => self.rho = in_range(key, raw, non_negative, "[0, inf)")?,
            "kappa" => self.kappa = in_range(key, raw, |v| (0.0..1.0).contains(&v), "[0, 1)")?,
            "physical" => {
                self.physical = raw.parse().map_err(|_| format!("physical: expected true or false, got '{raw}'"))?
            }
            "mass" => self.mass = in_range(key, raw, positive, "(0, inf)")?,
            "arm" => self.arm = in_range(key, raw, positive, "(0, inf)")?,
            "half_edge" => self.half_edge = in_range(key, raw, non_negative, "[0, inf)")?,
            "spring" => self.spring = in_range(key, raw, non_negative, "[0, inf)")?,
            "friction" => self.friction = in_range(key, raw, positive, "(0, inf)")?,
            "gravity" => self.gravity = in_range(key, raw, positive, "(0, inf)")?,
            "gear" => self.gear = in_range(key, raw, positive, "(0, inf)")?,
            "torque" => self.torque = in_range(key, raw, positive, "(0, inf)")?,
            "inertia" => self.inertia = in_range(key, raw, positive, "(0, inf)")?,
            "load" => self.load = in_range(key, raw, positive, "(0, inf)")?,
            "rtol" => self.rtol = in_range(key, raw, |v| (1e-12..=1e-3).contains(&v), "[1e-12, 1e-3]")?,
            "atol" => self.atol = in_range(key, raw, |v| (1e-12..=1e-3).contains(&v), "[1e-12, 1e-3]")?,
            "degeneracy_tol" => self.degeneracy_tol = in_range(key, raw, non_negative, "[0, inf)")?,
            "case" => {
                self.case = match raw {
                    "rho0" => Case::Rho0,
                    "kappa0" => Case::Kappa0,
                    _ => return Err(format!("case: expected rho0 or kappa0, got '{raw}'")),
                }
            }
            "formula" => {
                self.formula = match raw {
                    "auto" => ScanFormula::Auto,
                    "l1_numeric" => ScanFormula::L1Numeric,
                    "l1_closed" => ScanFormula::L1Closed,
                    _ => return Err(format!("formula: expected auto, l1_numeric or l1_closed, got '{raw}'")),
                }
            }
            "grid" => self.grid = parse_grid(raw)?,
            "beta_min" => self.beta_min = in_range(key, raw, |v| v > 0.0 && v < 1.0, "(0, 1)")?,
            "beta_max" => self.beta_max = in_range(key, raw, |v| v > 0.0 && v < 1.0, "(0, 1)")?,
            "kappa_max" => self.kappa_max = in_range(key, raw, |v| v > 0.0 && v < 1.0, "(0, 1)")?,
            "rho_max" => self.rho_max = in_range(key, raw, positive, "(0, inf)")?,
            "alpha_min" => self.alpha_min = in_range(key, raw, positive, "(0, inf)")?,
            "alpha_max" => self.alpha_max = in_range(key, raw, positive, "(0, inf)")?,
            "t_end" => self.t_end = in_range(key, raw, positive, "(0, inf)")?,
            "offset" => self.offset = in_range(key, raw, |v| v > 0.0 && v < 0.5, "(0, 0.5)")?,
            "samples" => self.samples = count(key, raw)?,
            "output_dir" => {
                if raw.is_empty() {
                    return Err("output_dir: empty path".into());
                }
                self.output_dir = PathBuf::from(raw)
            }
            "workers" => self.workers = count(key, raw)?,
            "seed" => self.seed = raw.parse().map_err(|_| format!("seed: expected an unsigned integer, got '{raw}'"))?,
            _ => return Err(format!("unknown key '{key}'")),
        }
        Ok(())
    }

    /// Apply a config document on top of `self`.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            let body = line.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let (key, value) = body
                .split_once('=')
                .ok_or_else(|| HgsError::Config { line: line_no, msg: format!("expected 'key = value', got '{body}'") })?;
            self.set(key.trim(), value).map_err(|msg| HgsError::Config { line: line_no, msg })?;
        }
        Ok(())
    }

    /// Apply the environment overrides, looked up through `var`.
    pub fn apply_env(&mut self, var: impl Fn(&str) -> Option<String>) -> Result<()> {
        for (name, key) in [(ENV_OUTPUT_DIR, "output_dir"), (ENV_WORKERS, "workers")] {
            if let Some(v) = var(name) {
                self.set(key, &v).map_err(|m| HgsError::Usage(format!("{name}: {m}")))?;
            }
        }
        Ok(())
    }

    /// Cross-key checks that single assignments cannot see.
    pub fn validate(&self) -> Result<()> {
        if self.epsilon.is_some() && self.ratio.is_some() {
            return Err(HgsError::Usage("give either epsilon or ratio, not both".into()));
        }
        let ordered = [
            ("beta_min", self.beta_min, "beta_max", self.beta_max),
            ("alpha_min", self.alpha_min, "alpha_max", self.alpha_max),
        ];
        for (a, lo, b, hi) in ordered {
            if lo >= hi {
                return Err(HgsError::Usage(format!("{a} = {lo} must be below {b} = {hi}")));
            }
        }
        if self.physical {
            self.physical_params().validate()?;
        }
        Ok(())
    }

    pub fn physical_params(&self) -> PhysicalParams {
        PhysicalParams {
            m: self.mass,
            l: self.arm,
            big_l: self.half_edge,
            k: self.spring,
            b: self.friction,
            g: self.gravity,
            c: self.gear,
            mu: self.torque,
            inertia: self.inertia,
            load: self.load,
        }
    }

    pub fn tolerances(&self) -> Tolerances {
        Tolerances { rel: self.rtol, abs: self.atol }
    }
}

/// Defaults overlaid with the file at `path`, then validated.
pub fn load_config(path: &Path) -> Result<RunConfig> {
    let text = std::fs::read_to_string(path)?;
    let mut cfg = RunConfig::default();
    cfg.apply_text(&text)?;
    cfg.validate()?;
    Ok(cfg)
}
