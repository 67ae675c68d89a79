// Copyright 2026 The esdlab Authors
// SPDX-License-Identifier: Apache-2.0

//! Command-line driver: figure generation, the property suite and single
//! channel evaluation.

pub mod config;
pub mod figures;
pub mod models;
pub mod output;

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use esdlab_core::quantum::choi;
use esdlab_core::CMatrix;
use log::{info, warn};

use crate::config::{parse_formats, parse_workers, read_config, split_pair, FileConfig, Params, RunSettings};
use crate::output::num;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("model error: {0}")]
    Model(#[from] esdlab_core::Error),
    #[error("property suite failed")]
    PropsFailed,
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } => 1,
            CliError::Config(_) | CliError::Model(_) => 2,
            CliError::PropsFailed => 3,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "esdlab", version, about = "Entanglement sudden death under decoherence control")]
pub struct Cli {
    /// Flat key=value file; command-line flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate the data and plots of one figure.
    Fig {
        /// One of: bandgap, freqmod, resfluo, josephson-contour,
        /// dephasing-compare, kappa-sweeps, bangbang.
        name: String,
        #[command(flatten)]
        params: ParamArgs,
        /// Output directory.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Comma-separated output formats: csv, svg.
        #[arg(long)]
        format: Option<String>,
        /// Worker threads for parameter sweeps.
        #[arg(long)]
        workers: Option<String>,
    },
    /// Run the property suite.
    Props {
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Print the superoperator and Choi matrix of a model at one time.
    Eval {
        #[arg(long)]
        model: Option<String>,
        #[arg(long)]
        time: Option<f64>,
        #[command(flatten)]
        params: ParamArgs,
    },
}

#[derive(Debug, Args)]
pub struct ParamArgs {
    /// Parameter override `key=value`; may be repeated.
    #[arg(long = "param", value_name = "KEY=VALUE")]
    pub param: Vec<String>,
}

impl ParamArgs {
    fn pairs(&self) -> Result<Vec<(String, String)>, CliError> {
        self.param
            .iter()
            .map(|s| split_pair(s).map_err(CliError::Config))
            .collect()
    }
}

/// File parameters first, so that flags override them.
fn merged_params(file: &FileConfig, flags: &ParamArgs) -> Result<Vec<(String, String)>, CliError> {
    let mut out = file.params.clone();
    out.extend(flags.pairs()?);
    Ok(out)
}

fn run_settings(
    file: &FileConfig,
    out: Option<PathBuf>,
    format: Option<String>,
    workers: Option<String>,
) -> Result<RunSettings, CliError> {
    let out = out
        .or_else(|| file.run.get("out").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("figures"));
    let format = format.or_else(|| file.run.get("format").cloned()).unwrap_or_else(|| "csv,svg".into());
    let workers = workers.or_else(|| file.run.get("workers").cloned());
    Ok(RunSettings {
        out,
        formats: parse_formats(&format)?,
        workers: workers.as_deref().map(parse_workers).transpose()?,
    })
}

fn set_workers(n: usize) {
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
        warn!("could not resize worker pool: {e}");
    }
}

/// Runs a parsed command line, writing human-readable output to `stdout`.
pub fn run(cli: Cli, stdout: &mut String) -> Result<(), CliError> {
    let file = match &cli.config {
        Some(path) => read_config(path)?,
        None => FileConfig::default(),
    };
    match cli.command {
        Command::Fig { name, params, out, format, workers } => {
            let settings = run_settings(&file, out, format, workers)?;
            let defaults = figures::defaults(&name)?;
            let params = Params::new(&format!("fig {name}"), &defaults, &merged_params(&file, &params)?)?;
            if let Some(n) = settings.workers {
                set_workers(n);
            }
            info!("running figure {name}");
            let artifacts = figures::run(&name, &params)?;
            for path in output::write_artifacts(&settings.out, &artifacts, &settings.formats)? {
                let _ = writeln!(stdout, "{}", path.display());
            }
            Ok(())
        }
        Command::Props { seed } => {
            let seed = match seed {
                Some(s) => s,
                None => match file.run.get("seed") {
                    Some(s) => s
                        .parse()
                        .map_err(|_| CliError::Config(format!("seed: expected an integer, got {s:?}")))?,
                    None => 0,
                },
            };
            let report = esdlab_core::props::prop_suite(seed);
            let _ = writeln!(stdout, "{report}");
            if report.passed() {
                Ok(())
            } else {
                Err(CliError::PropsFailed)
            }
        }
        Command::Eval { model, time, params } => {
            let model = model
                .or_else(|| file.run.get("model").cloned())
                .ok_or_else(|| CliError::Config("eval needs --model".into()))?;
            let time = match time {
                Some(t) => t,
                None => {
                    let s = file.run.get("time").ok_or_else(|| CliError::Config("eval needs --time".into()))?;
                    s.parse().map_err(|_| CliError::Config(format!("time: expected a number, got {s:?}")))?
                }
            };
            let params = Params::new(
                &format!("model {model}"),
                &models::model_defaults(&model)?,
                &merged_params(&file, &params)?,
            )?;
            let family = models::build_model(&model, &params)?;
            let v = family.channel(time)?;
            let m = choi(&v)?;
            let meta: Vec<String> = params.entries().iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = writeln!(stdout, "# model={model} t={time} params={}", meta.join(";"));
            let _ = writeln!(stdout, "V =");
            write_matrix(stdout, v.matrix());
            let _ = writeln!(stdout, "M =");
            write_matrix(stdout, m.matrix());
            let _ = writeln!(stdout, "concurrence = {}", num(family.concurrence(time)?));
            Ok(())
        }
    }
}

fn write_matrix(out: &mut String, m: &CMatrix) {
    for row in m.rows() {
        let cells: Vec<String> = row
            .iter()
            .map(|z| format!("{}{}{}i", num(z.re), if z.im.is_sign_negative() { "" } else { "+" }, num(z.im)))
            .collect();
        let _ = writeln!(out, "  {}", cells.join("  "));
    }
}
