mod config;
mod table;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use ising_decoherence::criticality::{critical_table, sweep_p, Trajectory};
use ising_decoherence::{discord, discord_oracle, spectrum, GroundState, ModelParams};

use config::{ConfigArgs, RunConfig};
use table::{Cell, Table};

/// Correlations of a transverse Ising spin pair under local decoherence.
#[derive(Debug, Parser)]
#[command(name = "ising-decoherence", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Reduced two-site density matrix, correlators and spectrum at one lambda
    GroundState(ConfigArgs),
    /// I, C and Q along a grid of decoherence parameters p
    SweepP(ConfigArgs),
    /// Sudden-change and crossing points with their lambda-derivatives
    Critical(ConfigArgs),
    /// Compare the closed-form discord with brute-force measurement optimization
    DiscordCheck {
        #[command(flatten)]
        config: ConfigArgs,
        /// Angular grid of the brute-force optimizer (at least 64)
        #[arg(long, default_value_t = 96)]
        oracle_grid: usize,
        /// Largest accepted |closed form - optimized|
        #[arg(long, default_value_t = 1e-6)]
        max_gap: f64,
    },
}

fn ground_state_table(cfg: &RunConfig) -> Result<Table> {
    let settings = cfg.settings()?;
    let gs = GroundState::compute(
        &ModelParams::new(cfg.lambda, cfg.pair_distance)?,
        &settings.quadrature,
    )?;
    let s = gs.state;
    let c = gs.correlators;
    let sp = spectrum(&s);
    let mut t = Table::new(vec![
        "lambda", "r", "a", "b", "d", "z", "f", "sz", "cxx", "cyy", "czz", "lam0", "lam1", "lam2",
        "lam3",
    ]);
    let mut row = vec![Cell::from(cfg.lambda), Cell::Int(cfg.pair_distance.into())];
    row.extend([s.a(), s.b(), s.d(), s.z(), s.f(), c.sz, c.cxx, c.cyy, c.czz].map(Cell::from));
    row.extend(sp.values().map(Cell::from));
    t.push(row);
    Ok(t)
}

fn sweep_table(cfg: &RunConfig) -> Result<Table> {
    let rows = sweep_p(cfg.lambda, cfg.channel, &cfg.p_grid, &cfg.settings()?)?;
    let mut t = Table::new(vec!["p", "I", "C", "Q", "branch"]);
    for r in rows {
        t.push(vec![
            r.p.into(),
            r.mutual.into(),
            r.classical.into(),
            r.quantum.into(),
            Cell::Text(r.branch.to_string()),
        ]);
    }
    Ok(t)
}

fn critical(cfg: &RunConfig) -> Result<Table> {
    let rows = critical_table(
        &cfg.lambda_grid,
        cfg.channel,
        cfg.derivative_step,
        &cfg.settings()?,
    )?;
    let mut t = Table::new(vec![
        "lambda",
        "p_sc",
        "p_cr1",
        "p_cr2",
        "delta_p_cr",
        "d_p_sc",
        "d_p_cr1",
        "d_p_cr2",
        "d_delta",
    ]);
    for r in rows {
        if let Some(msg) = &r.signature.diagnostic {
            eprintln!("lambda = {}: {msg}", r.signature.lambda);
        }
        let s = &r.signature;
        t.push(vec![
            s.lambda.into(),
            s.p_sc.into(),
            s.p_cr1.into(),
            s.p_cr2.into(),
            s.delta_p_cr.into(),
            r.d_p_sc.into(),
            r.d_p_cr1.into(),
            r.d_p_cr2.into(),
            r.d_delta.into(),
        ]);
    }
    Ok(t)
}

/// Returns the table and the largest gap seen.
fn discord_check(cfg: &RunConfig, oracle_grid: usize) -> Result<(Table, f64)> {
    let trajectory = Trajectory::from_ground_state(cfg.lambda, cfg.channel, &cfg.settings()?)?;
    let mut t = Table::new(vec!["p", "Q", "Q_optimized", "gap", "branch"]);
    let mut worst: f64 = 0.0;
    for &p in &cfg.p_grid {
        let state = trajectory.state_at(p)?;
        let br = discord(&state)?;
        let optimized = discord_oracle(&state, oracle_grid)?;
        let gap = (br.quantum - optimized).abs();
        worst = worst.max(gap);
        t.push(vec![
            p.into(),
            br.quantum.into(),
            optimized.into(),
            gap.into(),
            Cell::Text(br.branch.to_string()),
        ]);
    }
    Ok((t, worst))
}

fn emit(table: &Table, cfg: &RunConfig) -> Result<()> {
    match &cfg.out {
        Some(path) => {
            let file =
                File::create(path).with_context(|| format!("creating {}", path.display()))?;
            let mut w = BufWriter::new(file);
            table.write(cfg.format, &mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            table.write(cfg.format, stdout.lock())?;
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::GroundState(args) => {
            let cfg = RunConfig::resolve(&args)?;
            emit(&ground_state_table(&cfg)?, &cfg)?;
        }
        Command::SweepP(args) => {
            let cfg = RunConfig::resolve(&args)?;
            emit(&sweep_table(&cfg)?, &cfg)?;
        }
        Command::Critical(args) => {
            let cfg = RunConfig::resolve(&args)?;
            emit(&critical(&cfg)?, &cfg)?;
        }
        Command::DiscordCheck {
            config,
            oracle_grid,
            max_gap,
        } => {
            let cfg = RunConfig::resolve(&config)?;
            let (table, worst) = discord_check(&cfg, oracle_grid)?;
            emit(&table, &cfg)?;
            if worst > max_gap {
                eprintln!("largest gap {worst:e} exceeds {max_gap:e}");
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
