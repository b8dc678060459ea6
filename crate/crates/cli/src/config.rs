//! Run configuration: a flat `key = value` file with command-line flags on
//! top.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(name = "zetalab", version, about = "Zero tables, zero statistics and mean values of ζ′/ζ")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub overrides: Overrides,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Certified table of critical-line zeros (zeros.csv).
    Zeros,
    /// Zeros of ζ′ in 0.4 ≤ σ ≤ 10 (zeros_prime.csv).
    Dzeros,
    /// Gap, M_n, form factor, pair correlation, census, pairing and extreme
    /// value tables.
    Stats,
    /// Mean square of ζ′/ζ near the critical line (meanvalue.csv).
    Meanvalue,
    /// Invariant checks and bound profiles (verify.csv, profiles.csv).
    Verify {
        /// Use this zeros.csv instead of the computed table.
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// zeros, dzeros, stats, meanvalue and verify in turn.
    All,
}

#[derive(Debug, Default, Args)]
pub struct Overrides {
    /// Configuration file of `key = value` lines.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub tmax: Option<f64>,
    #[arg(long = "precision-digits", global = true)]
    pub precision_digits: Option<u32>,
    /// Mean-value parameter; repeat for several values.
    #[arg(long = "a", global = true)]
    pub a: Vec<f64>,
    #[arg(long, global = true)]
    pub c: Option<f64>,
    #[arg(long, global = true)]
    pub sigma1: Option<f64>,
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    /// Mean-value integration heights; repeat for several values.
    #[arg(long = "t-cap", global = true)]
    pub t_caps: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub t_max: f64,
    pub precision_digits: u32,
    pub a_list: Vec<f64>,
    pub c: f64,
    pub sigma1: f64,
    pub jobs: usize,
    pub out_dir: PathBuf,
    pub cache_dir: PathBuf,
    /// Heights T for the mean-value rows; empty means [t_max].
    pub t_caps: Vec<f64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            t_max: 1000.0,
            precision_digits: 40,
            a_list: vec![0.5, 1.0, 2.0],
            c: 1.0,
            sigma1: 0.9,
            jobs: 1,
            out_dir: PathBuf::from("out"),
            cache_dir: PathBuf::from(".zetalab-cache"),
            t_caps: Vec::new(),
        }
    }
}

fn parse_real(key: &str, v: &str) -> CliResult<f64> {
    v.trim()
        .parse()
        .map_err(|_| CliError::Config(format!("{key}: {v:?} is not a number")))
}

fn parse_list(key: &str, v: &str) -> CliResult<Vec<f64>> {
    v.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| parse_real(key, x))
        .collect()
}

impl RunConfig {
    /// Applies the lines of a configuration file. Blank lines and lines
    /// starting with `#` are ignored.
    pub fn apply_file_text(&mut self, text: &str) -> CliResult<()> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CliError::Config(format!("line {}: expected key = value", i + 1)))?;
            let (k, v) = (k.trim(), v.trim());
            match k {
                "tmax" | "t_max" => self.t_max = parse_real(k, v)?,
                "precision_digits" => {
                    self.precision_digits = v
                        .parse()
                        .map_err(|_| CliError::Config(format!("{k}: {v:?} is not an integer")))?
                }
                "a" | "a_list" => self.a_list = parse_list(k, v)?,
                "c" => self.c = parse_real(k, v)?,
                "sigma1" => self.sigma1 = parse_real(k, v)?,
                "jobs" => {
                    self.jobs = v
                        .parse()
                        .map_err(|_| CliError::Config(format!("{k}: {v:?} is not an integer")))?
                }
                "out" | "out_dir" => self.out_dir = PathBuf::from(v),
                "cache" | "cache_dir" => self.cache_dir = PathBuf::from(v),
                "t_caps" => self.t_caps = parse_list(k, v)?,
                _ => return Err(CliError::Config(format!("line {}: unknown key {k:?}", i + 1))),
            }
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> CliResult<()> {
        let text = fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        self.apply_file_text(&text)
    }

    pub fn apply_overrides(&mut self, o: &Overrides) {
        if let Some(v) = o.tmax {
            self.t_max = v;
        }
        if let Some(v) = o.precision_digits {
            self.precision_digits = v;
        }
        if !o.a.is_empty() {
            self.a_list = o.a.clone();
        }
        if let Some(v) = o.c {
            self.c = v;
        }
        if let Some(v) = o.sigma1 {
            self.sigma1 = v;
        }
        if let Some(v) = o.jobs {
            self.jobs = v;
        }
        if let Some(v) = &o.out {
            self.out_dir = v.clone();
        }
        if let Some(v) = &o.cache {
            self.cache_dir = v.clone();
        }
        if !o.t_caps.is_empty() {
            self.t_caps = o.t_caps.clone();
        }
    }

    /// Defaults, then the file named by `--config`, then flags.
    pub fn from_overrides(o: &Overrides) -> CliResult<Self> {
        let mut cfg = Self::default();
        if let Some(p) = &o.config {
            cfg.apply_file(p)?;
        }
        cfg.apply_overrides(o);
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> CliResult<()> {
        let bad = |m: String| Err(CliError::Config(m));
        if !(self.t_max >= 20.0 && self.t_max.is_finite()) {
            return bad(format!("tmax = {} must be at least 20", self.t_max));
        }
        if !(25..=200).contains(&self.precision_digits) {
            return bad(format!("precision_digits = {} outside [25, 200]", self.precision_digits));
        }
        if !(self.c > 0.0 && self.c.is_finite()) {
            return bad(format!("c = {} must be positive", self.c));
        }
        if !(self.sigma1 > 0.5 && self.sigma1 < 1.0) {
            return bad(format!("sigma1 = {} outside (1/2, 1)", self.sigma1));
        }
        if self.jobs < 1 {
            return bad("jobs must be at least 1".into());
        }
        if let Some(a) = self.a_list.iter().find(|a| !(**a > 0.0 && a.is_finite())) {
            return bad(format!("a = {a} must be positive"));
        }
        if let Some(t) = self.t_caps.iter().find(|t| !(**t >= 20.0 && **t <= self.t_max)) {
            return bad(format!("t_cap = {t} outside [20, tmax]"));
        }
        Ok(())
    }

    /// Mean-value heights.
    pub fn mean_value_caps(&self) -> Vec<f64> {
        if self.t_caps.is_empty() {
            vec![self.t_max]
        } else {
            self.t_caps.clone()
        }
    }
}
