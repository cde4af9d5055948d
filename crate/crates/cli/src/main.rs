//! `facies`: train, evaluate, cross-validate, and sweep a boosted-trees
//! facies classifier over wireline well-log CSVs.

mod commands;
mod config;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use facies_core::eval::F1Average;

use commands::crossval::CvMode;
use config::ExperimentConfig;

/// Rock-facies classification from wireline well logs.
#[derive(Parser)]
#[command(name = "facies", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Summarize a dataset: summary.json, correlations.csv, histograms.csv
    Stats(CommonArgs),
    /// Train on the non-blind wells: model.json, train_report.json
    Train(CommonArgs),
    /// Score the blind well: report.json, confusion.csv, predictions_track.csv
    Evaluate {
        #[command(flatten)]
        common: CommonArgs,
        /// Score a saved model.json instead of training in-process
        #[arg(long)]
        model: Option<PathBuf>,
    },
    /// Leave-one-well-out cross-validation: cv_report.json, cv_folds.csv
    Crossval {
        #[command(flatten)]
        common: CommonArgs,
        /// Fold layout
        #[arg(long, value_enum, default_value_t = CvMode::ExcludeBlind)]
        mode: CvMode,
        /// Run benchmark and physics feature sets side by side
        #[arg(long)]
        paired: bool,
    },
    /// Paired benchmark-vs-physics seed sweep: sweep.csv, sweep_summary.json
    Sweep {
        #[command(flatten)]
        common: CommonArgs,
        /// Seeds to sweep, comma separated (at least two)
        #[arg(long, value_delimiter = ',', default_value = "1,2,3,4,5,6,7,8,9,10")]
        seeds: Vec<u64>,
    },
}

/// Flags shared by every command; each overrides the corresponding config
/// file field.
#[derive(Args)]
struct CommonArgs {
    /// Dataset CSV path
    #[arg(long)]
    data: Option<PathBuf>,
    /// Experiment config JSON
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory
    #[arg(long)]
    out: Option<PathBuf>,
    /// Well withheld from training and scored blind
    #[arg(long)]
    blind_well: Option<String>,
    /// Booster seed
    #[arg(long)]
    seed: Option<u64>,
    /// Seed for the row-level validation carve
    #[arg(long)]
    split_seed: Option<u64>,
    /// Fraction of training rows carved out for validation
    #[arg(long)]
    validation_fraction: Option<f64>,
    /// F1 averaging scheme: weighted, micro, or macro
    #[arg(long)]
    f1_average: Option<F1Average>,
    /// Add the resistivity/porosity log-ratio feature
    #[arg(long)]
    physics: bool,
}

impl CommonArgs {
    fn resolve(&self) -> facies_core::Result<ExperimentConfig> {
        let mut config = match &self.config {
            Some(path) => ExperimentConfig::load(path)?,
            None => ExperimentConfig::default(),
        };
        if let Some(data) = &self.data {
            config.dataset_path = data.clone();
        }
        if let Some(out) = &self.out {
            config.output_dir = out.clone();
        }
        if let Some(well) = &self.blind_well {
            config.blind_well = well.clone();
        }
        if let Some(seed) = self.seed {
            config.model.seed = seed;
        }
        if let Some(split_seed) = self.split_seed {
            config.split_seed = split_seed;
        }
        if let Some(fraction) = self.validation_fraction {
            config.validation_fraction = fraction;
        }
        if let Some(average) = self.f1_average {
            config.f1_average = average;
        }
        if self.physics {
            config.augmentation.include_physics_ratio = true;
        }
        config.validate()?;
        Ok(config)
    }
}

fn run(command: &Command) -> facies_core::Result<()> {
    match command {
        Command::Stats(common) => commands::stats::run(&common.resolve()?),
        Command::Train(common) => commands::train::run(&common.resolve()?),
        Command::Evaluate { common, model } => {
            commands::evaluate::run(&common.resolve()?, model.as_deref())
        }
        Command::Crossval {
            common,
            mode,
            paired,
        } => commands::crossval::run(&common.resolve()?, *mode, *paired),
        Command::Sweep { common, seeds } => commands::sweep::run(&common.resolve()?, seeds),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .format_timestamp(None)
        .init();
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
