mod config;
mod error;
mod estimate;
mod plot;
mod sample;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use config::Settings;
use error::CliResult;

#[derive(Parser)]
#[command(
    name = "ksnake",
    version,
    about = "Random plane trees, Kesten's tree and tree-indexed random walks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print one sample in its text serialization.
    Sample {
        kind: SampleKind,
        #[command(flatten)]
        opts: Opts,
    },
    /// Run an estimator suite and write a CSV or JSONL report.
    Estimate {
        statistic: estimate::Statistic,
        #[command(flatten)]
        opts: Opts,
    },
    /// Draw an SVG summary of a report.
    Plot {
        kind: plot::PlotKind,
        /// Report written by `ksnake estimate`.
        report: PathBuf,
        /// SVG destination.
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SampleKind {
    Tree,
    Kesten,
    Augmented,
    Snake,
}

/// Every setting is also accepted as `key=value` in a `--config` file;
/// flags win.
#[derive(Args, Default)]
struct Opts {
    /// Flat key=value file, or a previous report to rerun.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Lattice dimension (grid for returns and phase).
    #[arg(long)]
    dim: Option<String>,
    /// geometric, poisson, or custom:k=p,...
    #[arg(long)]
    law: Option<String>,
    /// Radius or grid: 10, 10,50,100, 16:512:x2, 0:100:10.
    #[arg(long)]
    radius: Option<String>,
    #[arg(long)]
    trials: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long)]
    workers: Option<String>,
    /// csv or jsonl.
    #[arg(long)]
    format: Option<String>,
    /// Report destination; stdout when absent.
    #[arg(long)]
    out: Option<String>,
    /// Vertex budget per sample.
    #[arg(long)]
    budget: Option<String>,
    /// Edge count (tree samples, reversibility grid).
    #[arg(long)]
    n: Option<String>,
    /// Tightness thresholds, comma separated.
    #[arg(long)]
    lambda: Option<String>,
    /// Range thresholds, comma separated.
    #[arg(long)]
    c: Option<String>,
    /// Prefix exclusion fraction for range.
    #[arg(long)]
    eta: Option<String>,
    /// Diameter scale for the range event.
    #[arg(long)]
    m: Option<String>,
    /// Depth grid for per-vertex returns.
    #[arg(long)]
    k: Option<String>,
    /// Transport function for mtp, or `all`.
    #[arg(long)]
    function: Option<String>,
    /// Sampling radius for mtp; defaults to the adequacy bound.
    #[arg(long)]
    r_sample: Option<String>,
    /// Generation grid for late-return probabilities.
    #[arg(long)]
    generations: Option<String>,
    /// Per-trial JSONL records destination.
    #[arg(long)]
    records: Option<String>,
}

impl Opts {
    fn settings(&self) -> CliResult<Settings> {
        let mut s = match &self.config {
            Some(path) => Settings::from_file(path)?,
            None => Settings::default(),
        };
        let flags = [
            ("dim", &self.dim),
            ("law", &self.law),
            ("radius", &self.radius),
            ("trials", &self.trials),
            ("seed", &self.seed),
            ("workers", &self.workers),
            ("format", &self.format),
            ("out", &self.out),
            ("budget", &self.budget),
            ("n", &self.n),
            ("lambda", &self.lambda),
            ("c", &self.c),
            ("eta", &self.eta),
            ("m", &self.m),
            ("k", &self.k),
            ("function", &self.function),
            ("r_sample", &self.r_sample),
            ("generations", &self.generations),
            ("records", &self.records),
        ];
        for (k, v) in flags {
            s.overlay(k, v.as_ref())?;
        }
        Ok(s)
    }
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Sample { kind, opts } => {
            let s = opts.settings()?;
            let text = match kind {
                SampleKind::Tree => sample::tree(&s)?,
                SampleKind::Kesten => sample::kesten(&s)?,
                SampleKind::Augmented => sample::augmented(&s)?,
                SampleKind::Snake => sample::snake(&s)?,
            };
            print!("{text}");
            Ok(())
        }
        Command::Estimate { statistic, opts } => estimate::run(statistic, opts.settings()?),
        Command::Plot { kind, report, out } => plot::run(kind, &report, &out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("ksnake: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
