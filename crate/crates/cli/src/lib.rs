//! Command-line harness for robust phase estimation experiments.
//!
//! Exit codes: 0 on success, 1 for invalid input (usage, configuration,
//! imported data), 2 when an experiment or an output write fails.

pub mod config;
pub mod run;

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use robust_qphase::presets::PRESET_VERSION;
use robust_qphase::{Dataset, Execution, ScenarioTemplate};
use serde::Serialize;

use config::{parse_config, Experiment, ExperimentConfig, FigureId, DEFAULT_OUTPUT, DEFAULT_SEED};
use run::{default_runs, describe_outliers, run_experiment, Artifact, Plan};

pub const SEED_ENV: &str = "ROBUST_QPHASE_SEED";
pub const SUMMARY_FILE: &str = "summary.json";

#[derive(Debug, Parser)]
#[command(name = "robust-qphase", version, about = "Robust amplitude and phase estimation experiments")]
pub struct Cli {
    /// Experiment configuration file (`key = value` lines).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Base seed; overrides the config file and the environment.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Output directory.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Monte Carlo replications; overrides the config file.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub runs: Option<u64>,
    /// Run replications on the current thread only.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Draw one dataset and write it as CSV.
    Simulate,
    /// Estimate amplitude and phase on one dataset.
    Estimate {
        /// Dataset CSV with columns `phi,x[,source]`; simulated when absent.
        #[arg(long)]
        data: Option<PathBuf>,
    },
    /// Replication statistics for each estimator.
    Replicate,
    /// Estimates as a function of the contamination level.
    EpsCurve,
    /// Finite breakdown points by random replacement.
    Fbp,
    /// Monte Carlo efficiency relative to the sample mean.
    Efficiency,
    /// Regenerate the data behind a figure or table.
    Reproduce {
        /// fig2..fig7, table1 or table2
        id: FigureId,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Runtime(_) => 2,
        }
    }
}

#[derive(Debug, Serialize)]
struct ScenarioEcho {
    #[serde(flatten)]
    template: ScenarioTemplate,
    outlier_law: String,
}

#[derive(Debug, Serialize)]
struct Summary<'a> {
    tool: &'static str,
    version: &'static str,
    preset_version: &'static str,
    experiment: &'static str,
    seed: u64,
    runs: usize,
    execution: &'static str,
    scenario: ScenarioEcho,
    config: &'a ExperimentConfig,
    files: Vec<&'a str>,
    wall_time_seconds: f64,
}

/// Fully resolved invocation.
#[derive(Debug)]
pub struct Invocation {
    pub config: ExperimentConfig,
    pub seed: u64,
    pub runs: usize,
    pub out: PathBuf,
    pub exec: Execution,
    pub data: Option<Dataset>,
}

fn resolve_seed(flag: Option<u64>, config: Option<u64>, env: Option<&str>) -> Result<u64, CliError> {
    if let Some(s) = flag.or(config) {
        return Ok(s);
    }
    match env {
        Some(raw) => raw.trim().parse().map_err(|_| {
            CliError::Validation(format!("{SEED_ENV}: expected a nonnegative integer, got `{raw}`"))
        }),
        None => Ok(DEFAULT_SEED),
    }
}

/// Merges flags, configuration file and environment.
pub fn resolve(cli: Cli, env_seed: Option<&str>) -> Result<Invocation, CliError> {
    let mut config = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                CliError::Validation(format!("cannot read config {}: {e}", path.display()))
            })?;
            parse_config(&text).map_err(|e| {
                CliError::Validation(format!("invalid config {}:\n{e}", path.display()))
            })?
        }
        None => ExperimentConfig::default(),
    };
    let mut data_path = config.data.clone();
    match cli.command {
        Some(Command::Simulate) => config.experiment = Experiment::Simulate,
        Some(Command::Estimate { data }) => {
            config.experiment = Experiment::Estimate;
            data_path = data.or(data_path);
        }
        Some(Command::Replicate) => config.experiment = Experiment::Replicate,
        Some(Command::EpsCurve) => config.experiment = Experiment::EpsCurve,
        Some(Command::Fbp) => config.experiment = Experiment::Fbp,
        Some(Command::Efficiency) => config.experiment = Experiment::Efficiency,
        Some(Command::Reproduce { id }) => config.experiment = Experiment::Reproduce(id),
        None if cli.config.is_none() => {
            return Err(CliError::Validation(
                "nothing to do: give a subcommand or --config (see --help)".into(),
            ))
        }
        None => {}
    }
    let seed = resolve_seed(cli.seed, config.seed, env_seed)?;
    let runs = cli
        .runs
        .map(|r| r as usize)
        .or(config.runs)
        .unwrap_or_else(|| default_runs(config.experiment));
    let data = match (&config.experiment, data_path) {
        (Experiment::Estimate, Some(path)) => {
            let file = std::fs::File::open(&path).map_err(|e| {
                CliError::Validation(format!("cannot open dataset {}: {e}", path.display()))
            })?;
            let ds = Dataset::read_csv(file, seed).map_err(|e| {
                CliError::Validation(format!("invalid dataset {}: {e}", path.display()))
            })?;
            Some(ds)
        }
        _ => None,
    };
    let out = cli
        .out
        .or_else(|| config.output.clone())
        .unwrap_or_else(|| PathBuf::from(DEFAULT_OUTPUT));
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    Ok(Invocation {
        config,
        seed,
        runs,
        out,
        exec,
        data,
    })
}

fn write_all(dir: &Path, artifacts: &[Artifact], summary: &Summary<'_>) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Runtime(format!("cannot write to {}: {e}", dir.display()));
    std::fs::create_dir_all(dir).map_err(io)?;
    for a in artifacts {
        a.write_to(dir).map_err(io)?;
    }
    let mut json = serde_json::to_vec_pretty(summary)
        .map_err(|e| CliError::Runtime(format!("cannot encode summary: {e}")))?;
    json.push(b'\n');
    std::fs::write(dir.join(SUMMARY_FILE), json).map_err(io)
}

/// Runs a resolved invocation and returns the paths written.
pub fn execute(inv: &Invocation) -> Result<Vec<PathBuf>, CliError> {
    let start = Instant::now();
    let plan = Plan {
        config: &inv.config,
        runs: inv.runs,
        seed: inv.seed,
        exec: inv.exec,
        data: inv.data.as_ref(),
    };
    let artifacts = run_experiment(&plan).map_err(|e| CliError::Runtime(e.to_string()))?;
    let template = inv.config.effective_scenario();
    let summary = Summary {
        tool: "robust-qphase",
        version: env!("CARGO_PKG_VERSION"),
        preset_version: PRESET_VERSION,
        experiment: inv.config.experiment.name(),
        seed: inv.seed,
        runs: inv.runs,
        execution: match inv.exec {
            Execution::Sequential => "sequential",
            #[allow(unreachable_patterns)]
            _ => "parallel",
        },
        scenario: ScenarioEcho {
            template,
            outlier_law: describe_outliers(&template.outliers),
        },
        config: &inv.config,
        files: artifacts.iter().map(|a| a.name.as_str()).collect(),
        wall_time_seconds: start.elapsed().as_secs_f64(),
    };
    write_all(&inv.out, &artifacts, &summary)?;
    let mut paths: Vec<PathBuf> = artifacts.iter().map(|a| inv.out.join(&a.name)).collect();
    paths.push(inv.out.join(SUMMARY_FILE));
    Ok(paths)
}

/// Entry point behind the binary; returns the process exit code.
pub fn main_with<I, T>(args: I, env_seed: Option<&str>) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let result = resolve(cli, env_seed).and_then(|inv| execute(&inv));
    match result {
        Ok(paths) => {
            for p in paths {
                println!("{}", p.display());
            }
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
