use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use goldilocks::validation::Fault;
use goldilocks::{AngularShape, KernelOptions, Method};

mod commands;
mod config;
mod output;
mod units;

use commands::{ReportFormat, Settings};
use config::RunConfig;

/// Localization-rate sweeps, readout maps and cross-method validation.
///
/// Options resolve in the order: command-line flag, GOLDILOCKS_* environment variable,
/// config file, built-in default.
#[derive(Parser)]
#[command(name = "goldilocks", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// TOML run configuration
    #[arg(long, global = true, env = "GOLDILOCKS_CONFIG")]
    config: Option<PathBuf>,

    /// Output file (stdout if omitted)
    #[arg(long, global = true, env = "GOLDILOCKS_OUT")]
    out: Option<PathBuf>,

    /// Kernel evaluator: closed-form, quadrature, series, taylor, asymptotic
    #[arg(long, global = true, env = "GOLDILOCKS_METHOD")]
    method: Option<Method>,

    /// Angular environment: directional or isotropic
    #[arg(long, global = true, env = "GOLDILOCKS_MODE")]
    mode: Option<AngularShape>,

    /// Seed for the Monte Carlo and randomised checks
    #[arg(long, global = true, env = "GOLDILOCKS_SEED")]
    seed: Option<u64>,

    /// Worker threads (0 = one per core)
    #[arg(long, global = true, env = "GOLDILOCKS_THREADS")]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Kernel F_ang against dx/lambda (CSV)
    Curve {
        /// Also draw Re and Im as an SVG plot
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Readout signal A sin(phi) over separation and time (CSV)
    SignalMap {
        /// Also draw the map as an SVG heatmap
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Phase from the rate (`kernel`) or the linear comparison phi = 2 pi dx/lambda (`linear`)
        #[arg(long)]
        phase_model: Option<String>,
    },
    /// Click-detector efficiency for shaped single-photon beams (CSV)
    PhotonEff,
    /// Rutherford prefactor, ion rate and best separation (JSON)
    Ion,
    /// Separation window of maximal phase (JSON)
    Optimize,
    /// Cross-method validation suite; exits 4 if any invariant fails
    Validate {
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
        /// Corrupt a reference constant to exercise the failure path
        #[arg(long, hide = true)]
        fault: Option<Fault>,
    },
}

fn settings(cli: &Cli, cfg: &RunConfig) -> Result<Settings> {
    let method = match (cli.method, &cfg.method) {
        (Some(m), _) => m,
        (None, Some(text)) => text.parse().map_err(anyhow::Error::msg).context("config `method`")?,
        (None, None) => Method::ClosedForm,
    };
    let mode = match (cli.mode, &cfg.mode) {
        (Some(m), _) => Some(m),
        (None, Some(text)) => Some(text.parse().map_err(anyhow::Error::msg).context("config `mode`")?),
        (None, None) => None,
    };
    let mut opts = KernelOptions::default();
    if let Some(tol) = cfg.tol {
        opts.tol = tol;
    }
    if let Some(depth) = cfg.max_depth {
        opts.max_depth = depth;
    }
    Ok(Settings {
        method,
        mode,
        seed: cli.seed.or(cfg.seed).unwrap_or(1),
        opts,
        out: cli.out.clone(),
    })
}

fn dispatch(cli: Cli) -> Result<i32> {
    let cfg = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(threads) = cli.threads.or(cfg.threads) {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("configuring the thread pool")?;
    }
    let s = settings(&cli, &cfg)?;
    match &cli.command {
        Command::Curve { svg } => commands::curve(&cfg, &s, svg.as_deref()),
        Command::SignalMap { svg, phase_model } => {
            commands::signal_map_cmd(&cfg, &s, svg.as_deref(), phase_model.as_deref())
        }
        Command::PhotonEff => commands::photon_eff(&cfg, &s),
        Command::Ion => commands::ion(&cfg, &s),
        Command::Optimize => commands::optimize(&cfg, &s),
        Command::Validate { format, fault } => commands::validate(&cfg, &s, *format, *fault),
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            std::process::exit(if e.use_stderr() {
                commands::EXIT_USAGE
            } else {
                commands::EXIT_OK
            });
        }
    };
    let code = match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            commands::exit_code(&e)
        }
    };
    std::process::exit(code);
}
