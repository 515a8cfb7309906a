//! The `pwl-market` command line.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::analysis::classify::{classify_trajectory, ClassLabel};
use crate::analysis::region::{classify_region, f_subregion, DEFAULT_BOUNDARY_TOL};
use crate::grids::with_threads;
use crate::io::config::{ConfigError, Settings, Source};
use crate::io::csv::write_json;
use crate::io::IoError;
use crate::presets::{preset, Job, JobError, JobOptions, JobSummary, PRESET_NAMES};

/// Exit status for failed runs (bad config, I/O, invalid parameters).
pub const EXIT_ERROR: i32 = 1;
/// Exit status when a grid left too many cells undecided.
pub const EXIT_UNDECIDED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "pwl-market", version, about = "Chartist-fundamentalist market map: basins, bifurcations, regime switching")]
struct Cli {
    /// JSON file of flat dotted keys.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Override one key; repeatable, applied after --config.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Output directory.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Worker threads (falls back to PWL_THREADS).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed of the shock stream.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the parameter region and the stability subregion of F.
    Region,
    /// Iterate one map and write the trajectory.
    Simulate,
    /// Classify one initial condition; JSON on stdout.
    Classify,
    /// Basin grid over initial conditions.
    Basin,
    /// Two-parameter (b, c) grid from one initial condition.
    Bifurcation,
    /// Symbolic cycle scan.
    Cycles,
    /// Simulation with fundamental shocks and regime statistics.
    Stochastic,
    /// Reproduce a figure's parameter sets.
    Figure {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(PRESET_NAMES))]
        name: String,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Region => "region",
            Command::Simulate => "simulate",
            Command::Classify => "classify",
            Command::Basin => "basin",
            Command::Bifurcation => "bifurcation",
            Command::Cycles => "cycles",
            Command::Stochastic => "stochastic",
            Command::Figure { .. } => "figure",
        }
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Job(#[from] JobError),
    #[error(transparent)]
    Io(#[from] IoError),
    #[error("{0}")]
    Other(String),
}

/// Runs the command line and returns the process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}

fn settings(cli: &Cli) -> Result<Settings, CliError> {
    let mut s = Settings::new();
    if let Some(path) = &cli.config {
        s.load_file(path)?;
    }
    for kv in &cli.set {
        s.apply_set(kv)?;
    }
    if let Some(seed) = cli.seed {
        s.insert("shock.seed", json!(seed), Source::Set(format!("--seed {seed}")))?;
    }
    Ok(s)
}

fn thread_count(cli: &Cli, s: &Settings) -> Result<Option<usize>, CliError> {
    let n = match cli.threads {
        Some(n) => Some(n),
        None if s.contains("threads") => Some(s.usize_or("threads", 0)?),
        None => match std::env::var("PWL_THREADS") {
            Ok(v) => Some(v.trim().parse().map_err(|_| CliError::Other(format!("PWL_THREADS={v:?} is not a count")))?),
            Err(_) => None,
        },
    };
    match n {
        Some(0) => Err(CliError::Other("thread count must be positive".into())),
        other => Ok(other),
    }
}

fn execute(cli: &Cli) -> Result<i32, CliError> {
    let s = settings(cli)?;
    let threads = thread_count(cli, &s)?;
    let body = || dispatch(cli, &s, threads);
    match threads {
        Some(n) => with_threads(n, body).map_err(|e| CliError::Other(e.to_string()))?,
        None => body(),
    }
}

fn out_dir(cli: &Cli) -> Result<PathBuf, CliError> {
    let dir = cli.out.clone().unwrap_or_else(|| PathBuf::from("out"));
    std::fs::create_dir_all(&dir).map_err(|e| IoError::at(&dir, e))?;
    Ok(dir)
}

fn write_resolved(dir: &Path, cli: &Cli, s: &Settings, threads: Option<usize>, preset_note: Option<&str>) -> Result<(), CliError> {
    let mut doc = json!({
        "command": cli.command.name(),
        "settings": Value::Object(s.resolved()),
        "threads": threads.unwrap_or_else(rayon::current_num_threads),
    });
    if let Command::Figure { name } = &cli.command {
        doc["preset"] = json!(name);
    }
    if let Some(note) = preset_note {
        doc["note"] = json!(note);
    }
    write_json(&dir.join("resolved.json"), &doc)?;
    Ok(())
}

/// Writes a line to stdout; a closed pipe is not an error.
fn emit(text: &str) {
    use std::io::Write;
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn undecided_status(summaries: &[&JobSummary], limit: f64) -> i32 {
    let worst = summaries.iter().map(|s| s.undecided_fraction).fold(0.0, f64::max);
    if worst > limit {
        eprintln!("undecided fraction {worst} exceeds {limit}");
        EXIT_UNDECIDED
    } else {
        0
    }
}

fn dispatch(cli: &Cli, s: &Settings, threads: Option<usize>) -> Result<i32, CliError> {
    let opts = || -> Result<JobOptions, CliError> { Ok(JobOptions { classifier: s.classifier()?, ..JobOptions::default() }) };
    let single = |job: Job, stem: &str, extra: Option<&str>| -> Result<i32, CliError> {
        let opts = opts()?;
        let limit = s.undecided_max()?;
        let dir = out_dir(cli)?;
        let summary = job.run(&opts, &dir, stem)?;
        write_json(&dir.join("summary.json"), &summary.value)?;
        if let Some(name) = extra {
            write_json(&dir.join(name), &summary.value)?;
        }
        write_resolved(&dir, cli, s, threads, None)?;
        Ok(undecided_status(&[&summary], limit))
    };
    match &cli.command {
        Command::Region => {
            let p = s.model_params()?;
            emit(&format!("{}\n{}", classify_region(&p, DEFAULT_BOUNDARY_TOL), f_subregion(&p)));
            Ok(0)
        }
        Command::Classify => {
            let p = s.model_params()?;
            let s0 = s.initial_state()?;
            let c = classify_trajectory(s0, &p, &s.classifier()?);
            let d = &c.diagnostics;
            let mut doc = json!({
                "variant": c.label.name(),
                "b": p.b, "c": p.c, "h": p.h, "x0": s0.x, "y0": s0.y,
                "iterations": d.iterations,
                "branch_visits": { "L": d.branch_visits[0], "M": d.branch_visits[1], "R": d.branch_visits[2] },
                "exit_state": [d.exit_state.x, d.exit_state.y],
                "region": classify_region(&p, DEFAULT_BOUNDARY_TOL).to_string(),
            });
            if let Some(u) = c.label.limit() {
                doc["limit"] = json!(u);
            }
            if let ClassLabel::PeriodicAnomaly(q) = c.label {
                doc["period"] = json!(q);
            }
            emit(&serde_json::to_string_pretty(&doc).map_err(|e| CliError::Other(e.to_string()))?);
            Ok(0)
        }
        Command::Simulate => {
            let job = Job::Trajectory {
                kind: s.map_kind()?,
                params: s.model_params()?,
                initial: s.initial_state()?,
                steps: s.usize_or("steps", 1000)?,
            };
            single(job, "trajectory", None)
        }
        Command::Basin => single(Job::Basin { params: s.model_params()?, grid: s.grid()? }, "basin", None),
        Command::Bifurcation => single(Job::Bifurcation { spec: s.bifurcation()? }, "bifurcation", None),
        Command::Cycles => {
            let job = Job::Cycles {
                params: s.model_params()?,
                k_max: s.usize_or("cycles.k_max", 10)?,
                tol: s.f64_or("cycles.tol", 1e-8)?,
            };
            single(job, "cycles", None)
        }
        Command::Stochastic => {
            let job = Job::Stochastic {
                params: s.model_params()?,
                shock: s.shock()?,
                grid: s.grid()?,
                transient: s.usize_or("shock.transient", 0)?,
            };
            single(job, "stochastic", Some("regime_stats.json"))
        }
        Command::Figure { name } => {
            let preset = preset(name).ok_or_else(|| CliError::Other(format!("unknown preset {name}")))?;
            let opts = opts()?;
            let limit = s.undecided_max()?;
            let dir = out_dir(cli)?.join(preset.name);
            std::fs::create_dir_all(&dir).map_err(|e| IoError::at(&dir, e))?;
            let mut summaries = Vec::new();
            let mut doc = serde_json::Map::new();
            for panel in &preset.panels {
                let summary = panel.job.run(&opts, &dir, &panel.name)?;
                doc.insert(panel.name.clone(), summary.value.clone());
                summaries.push(summary);
            }
            write_json(&dir.join("summary.json"), &Value::Object(doc))?;
            write_resolved(&dir, cli, s, threads, preset.note)?;
            Ok(undecided_status(&summaries.iter().collect::<Vec<_>>(), limit))
        }
    }
}
