mod batch;
mod config;
mod inspect;
mod load;
mod score;
mod serve;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use coref_eval::io::{MetricSet, ReportFormat};
use coref_eval::XpsMode;

use config::{Inputs, MismatchPolicy, RunConfig};
use inspect::Target;
use load::UniverseMismatch;

#[derive(Parser)]
#[command(name = "coref-eval", version)]
#[command(about = "Score coreference output against a key with MUC, core-MR, exclusive core-MR and distributional metrics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Score one response file against one key file
    Score {
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        report: ReportArgs,
        /// Write the report here instead of standard output
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Score every document listed in a manifest, plus a micro-averaged total
    Batch {
        /// CSV with header `doc_id,key,response`; paths relative to the manifest
        #[arg(long)]
        manifest: PathBuf,
        /// Documents scored in parallel (default: one per core)
        #[arg(long)]
        jobs: Option<usize>,
        #[command(flatten)]
        report: ReportArgs,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Export the inspector bundle for a key/response pair, or serve it locally
    Inspect {
        #[command(flatten)]
        pair: PairArgs,
        /// Write the bundle JSON to this file
        #[arg(long, conflicts_with = "serve", required_unless_present = "serve")]
        out: Option<PathBuf>,
        /// Serve the inspector on 127.0.0.1:PORT until interrupted (0 picks a free port)
        #[arg(long, value_name = "PORT")]
        serve: Option<u16>,
        /// Directory with the inspector's static files
        #[arg(long, requires = "serve")]
        assets: Option<PathBuf>,
        #[arg(long, default_value_t = XpsMode::Reconstructed)]
        xps_mode: XpsMode,
        #[arg(long, value_enum, default_value_t = MismatchPolicy::Extend)]
        on_mismatch: MismatchPolicy,
    },
}

#[derive(Args)]
struct PairArgs {
    /// Key (reference) file, native JSON or COREF markup
    #[arg(long)]
    key: PathBuf,
    /// Response (system output) file, native JSON or COREF markup
    #[arg(long = "resp")]
    response: PathBuf,
}

impl From<PairArgs> for Inputs {
    fn from(p: PairArgs) -> Self {
        Inputs::Pair {
            key: p.key,
            response: p.response,
        }
    }
}

#[derive(Args)]
struct ReportArgs {
    /// text, csv or json (default: text for `score`, csv for `batch`)
    #[arg(long)]
    format: Option<ReportFormat>,
    /// Comma-separated subset of muc, core, xcore, dist (default: all)
    #[arg(long, default_value = "all")]
    metrics: MetricSet,
    /// Exclusive precision: reconstructed (counts exclusive-core mentions) or printed (counts foreign mentions in bound classes)
    #[arg(long, default_value_t = XpsMode::Reconstructed)]
    xps_mode: XpsMode,
    /// extend: add missing mentions as singletons; error: refuse to score
    #[arg(long, value_enum, default_value_t = MismatchPolicy::Extend)]
    on_mismatch: MismatchPolicy,
}

impl ReportArgs {
    fn config(&self, inputs: Inputs, output: Option<PathBuf>, jobs: Option<usize>) -> RunConfig {
        let default_format = match inputs {
            Inputs::Pair { .. } => ReportFormat::Text,
            Inputs::Manifest(_) => ReportFormat::Csv,
        };
        RunConfig {
            inputs,
            metrics: self.metrics,
            format: self.format.unwrap_or(default_format),
            xps_mode: self.xps_mode,
            on_mismatch: self.on_mismatch,
            output,
            jobs,
        }
    }
}

pub(crate) fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Score { pair, report, output } => {
            let config = report.config(pair.into(), output, None);
            score::run(&config)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Batch {
            manifest,
            jobs,
            report,
            output,
        } => {
            let config = report.config(Inputs::Manifest(manifest), output, jobs);
            let all_scored = batch::run(&config)?;
            Ok(if all_scored { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Inspect {
            pair,
            out,
            serve,
            assets,
            xps_mode,
            on_mismatch,
        } => {
            let config = RunConfig {
                inputs: pair.into(),
                metrics: MetricSet::ALL,
                format: ReportFormat::Json,
                xps_mode,
                on_mismatch,
                output: out.clone(),
                jobs: None,
            };
            let target = match (out, serve) {
                (Some(path), _) => Target::File(path),
                (None, Some(port)) => Target::Serve { port, assets },
                (None, None) => unreachable!("clap requires --out or --serve"),
            };
            inspect::run(&config, &target)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UniverseMismatch>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
