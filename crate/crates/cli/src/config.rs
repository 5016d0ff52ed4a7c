//! Run configuration: command-line flags layered over an optional TOML file
//! of `key = value` pairs. Flags win over the file.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{bail, ensure, Context, Result};
use clap::{Args, ValueEnum};
use ising_decoherence::criticality::linspace;
use ising_decoherence::{ChannelKind, QuadratureSpec, SolverSettings};
use serde::Deserialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Flags shared by every subcommand. Everything is optional so that unset
/// flags fall through to the config file and then to the defaults.
#[derive(Debug, Clone, Default, Args)]
pub struct ConfigArgs {
    /// Coupling lambda
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Channel name or alias (amplitude-damping, phase-flip, bit-flip, bit-phase-flip)
    #[arg(long)]
    pub channel: Option<String>,
    /// Pair distance
    #[arg(long)]
    pub r: Option<u32>,
    /// Absolute tolerance of the correlator quadrature
    #[arg(long)]
    pub quad_tol: Option<f64>,
    /// Bracket width at which root searches stop
    #[arg(long)]
    pub root_tol: Option<f64>,
    #[arg(long)]
    pub p_start: Option<f64>,
    #[arg(long)]
    pub p_stop: Option<f64>,
    #[arg(long)]
    pub p_count: Option<usize>,
    /// Comma list (0.9,0.95) or start:stop:count
    #[arg(long)]
    pub lambda_grid: Option<String>,
    /// Finite-difference step in lambda
    #[arg(long)]
    pub h: Option<f64>,
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
    /// Write to this file instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// TOML file with any of the keys above (underscored, e.g. quad_tol)
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    lambda: Option<f64>,
    channel: Option<String>,
    r: Option<u32>,
    quad_tol: Option<f64>,
    root_tol: Option<f64>,
    p_start: Option<f64>,
    p_stop: Option<f64>,
    p_count: Option<usize>,
    lambda_grid: Option<String>,
    h: Option<f64>,
    format: Option<OutputFormat>,
    out: Option<PathBuf>,
}

fn read_file(path: &Path) -> Result<FileConfig> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub lambda: f64,
    pub channel: ChannelKind,
    pub pair_distance: u32,
    pub quad_tol: f64,
    pub root_tol: f64,
    pub p_grid: Vec<f64>,
    pub lambda_grid: Vec<f64>,
    pub derivative_step: f64,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
}

const DEFAULT_LAMBDA_GRID: &str = "0.05:0.995:20";

impl RunConfig {
    pub fn resolve(args: &ConfigArgs) -> Result<Self> {
        let file = match &args.config {
            Some(path) => read_file(path)?,
            None => FileConfig::default(),
        };
        let defaults = SolverSettings::default();

        let channel_name = args
            .channel
            .clone()
            .or(file.channel)
            .unwrap_or_else(|| "phase-flip".into());
        let grid_spec = args.lambda_grid.clone().or(file.lambda_grid);
        let p_start = args.p_start.or(file.p_start).unwrap_or(0.0);
        let p_stop = args.p_stop.or(file.p_stop).unwrap_or(1.0);
        let p_count = args.p_count.or(file.p_count).unwrap_or(101);

        let config = Self {
            lambda: args.lambda.or(file.lambda).unwrap_or(0.5),
            channel: ChannelKind::from_str(&channel_name)?,
            pair_distance: args.r.or(file.r).unwrap_or(1),
            quad_tol: args
                .quad_tol
                .or(file.quad_tol)
                .unwrap_or(defaults.quadrature.abs_tol),
            root_tol: args.root_tol.or(file.root_tol).unwrap_or(defaults.root_tol),
            p_grid: linspace(p_start, p_stop, p_count),
            lambda_grid: parse_grid(grid_spec.as_deref().unwrap_or(DEFAULT_LAMBDA_GRID))?,
            derivative_step: args.h.or(file.h).unwrap_or(1e-3),
            format: args.format.or(file.format).unwrap_or(OutputFormat::Csv),
            out: args.out.clone().or(file.out),
        };
        config.validate()?;
        Ok(config)
    }

    fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("quad-tol", self.quad_tol),
            ("root-tol", self.root_tol),
            ("h", self.derivative_step),
        ] {
            ensure!(v > 0.0 && v.is_finite(), "{name} must be positive, got {v}");
        }
        ensure!(!self.p_grid.is_empty(), "p grid is empty");
        ensure!(!self.lambda_grid.is_empty(), "lambda grid is empty");
        ensure!(self.pair_distance >= 1, "r must be at least 1");
        Ok(())
    }

    pub fn settings(&self) -> Result<SolverSettings> {
        let mut settings = SolverSettings {
            pair_distance: self.pair_distance,
            root_tol: self.root_tol,
            ..SolverSettings::default()
        };
        settings.quadrature =
            QuadratureSpec::new(self.quad_tol, settings.quadrature.max_refinements)?;
        Ok(settings)
    }
}

/// `a,b,c` or `start:stop:count`.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let spec = spec.trim();
    if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').map(str::trim).collect();
        let [start, stop, count] = parts[..] else {
            bail!("grid `{spec}` must be start:stop:count");
        };
        let count: usize = count
            .parse()
            .with_context(|| format!("grid count `{count}`"))?;
        ensure!(count > 0, "grid `{spec}` has no points");
        return Ok(linspace(start.parse()?, stop.parse()?, count));
    }
    spec.split(',')
        .map(|v| {
            v.trim()
                .parse::<f64>()
                .with_context(|| format!("grid value `{v}`"))
        })
        .collect()
}
