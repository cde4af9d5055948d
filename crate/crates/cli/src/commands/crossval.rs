use clap::ValueEnum;
use facies_core::data::parse_dataset_file;
use facies_core::eval::{leave_one_well_out_cv, CVReport, F1Average};
use facies_core::{Error, Result};
use serde::Serialize;

use crate::config::ExperimentConfig;
use crate::io::{csv_field, ensure_dir, fmt_f64, to_pretty_json, write_atomic};

/// Fold layout for leave-one-well-out cross-validation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CvMode {
    /// Hold out every well in turn.
    AllWells,
    /// Hold out every well except the configured blind well.
    ExcludeBlind,
}

impl CvMode {
    fn as_str(self) -> &'static str {
        match self {
            CvMode::AllWells => "all-wells",
            CvMode::ExcludeBlind => "exclude-blind",
        }
    }
}

#[derive(Serialize)]
struct SingleCvOutput<'a> {
    mode: &'static str,
    paired: bool,
    f1_average: F1Average,
    report: &'a CVReport,
}

#[derive(Serialize)]
struct PairedCvOutput<'a> {
    mode: &'static str,
    paired: bool,
    f1_average: F1Average,
    benchmark: &'a CVReport,
    physics: &'a CVReport,
    per_fold_relative_delta: &'a [f64],
    mean_relative_delta: f64,
}

/// Leave-one-well-out cross-validation; writes cv_report.json + cv_folds.csv.
pub fn run(config: &ExperimentConfig, mode: CvMode, paired: bool) -> Result<()> {
    let dataset = parse_dataset_file(&config.dataset_path)?;
    let wells: Option<Vec<String>> = match mode {
        CvMode::AllWells => None,
        CvMode::ExcludeBlind => {
            let rest: Vec<String> = dataset
                .wells()
                .iter()
                .filter(|w| **w != config.blind_well)
                .cloned()
                .collect();
            if rest.len() == dataset.wells().len() {
                return Err(Error::UnknownWell {
                    name: config.blind_well.clone(),
                    available: dataset.wells().to_vec(),
                });
            }
            Some(rest)
        }
    };
    ensure_dir(&config.output_dir)?;

    if paired {
        let mut benchmark_aug = config.augmentation.clone();
        benchmark_aug.include_physics_ratio = false;
        let mut physics_aug = config.augmentation.clone();
        physics_aug.include_physics_ratio = true;

        let benchmark = leave_one_well_out_cv(
            &dataset,
            &benchmark_aug,
            &config.model,
            wells.as_deref(),
            config.f1_average,
        )?;
        let physics = leave_one_well_out_cv(
            &dataset,
            &physics_aug,
            &config.model,
            wells.as_deref(),
            config.f1_average,
        )?;

        let mut deltas = Vec::with_capacity(benchmark.folds.len());
        let mut folds_csv = String::from("well,benchmark_f1,physics_f1,relative_delta\n");
        for (fold_b, fold_p) in benchmark.folds.iter().zip(&physics.folds) {
            let f1_b = config.f1_average.of(&fold_b.report.f1);
            let f1_p = config.f1_average.of(&fold_p.report.f1);
            if f1_b == 0.0 {
                return Err(Error::ZeroBaseline);
            }
            let delta = (f1_p - f1_b) / f1_b;
            deltas.push(delta);
            folds_csv.push_str(&format!(
                "{},{},{},{}\n",
                csv_field(&fold_b.well),
                fmt_f64(f1_b),
                fmt_f64(f1_p),
                fmt_f64(delta)
            ));
        }
        let mean_relative_delta = deltas.iter().sum::<f64>() / deltas.len() as f64;

        write_atomic(
            &config.output_dir.join("cv_report.json"),
            &to_pretty_json(&PairedCvOutput {
                mode: mode.as_str(),
                paired: true,
                f1_average: config.f1_average,
                benchmark: &benchmark,
                physics: &physics,
                per_fold_relative_delta: &deltas,
                mean_relative_delta,
            })?,
        )?;
        write_atomic(&config.output_dir.join("cv_folds.csv"), &folds_csv)?;

        println!(
            "{} folds ({}): benchmark mean {} {:.4} +- {:.4}, physics {:.4} +- {:.4}, mean relative delta {:+.2}%; wrote cv_report.json, cv_folds.csv to {}",
            benchmark.folds.len(),
            mode.as_str(),
            config.f1_average,
            benchmark.mean_f1,
            benchmark.stddev_f1,
            physics.mean_f1,
            physics.stddev_f1,
            100.0 * mean_relative_delta,
            config.output_dir.display()
        );
    } else {
        let report = leave_one_well_out_cv(
            &dataset,
            &config.augmentation,
            &config.model,
            wells.as_deref(),
            config.f1_average,
        )?;

        let mut folds_csv = String::from("well,f1\n");
        for fold in &report.folds {
            folds_csv.push_str(&format!(
                "{},{}\n",
                csv_field(&fold.well),
                fmt_f64(config.f1_average.of(&fold.report.f1))
            ));
        }

        write_atomic(
            &config.output_dir.join("cv_report.json"),
            &to_pretty_json(&SingleCvOutput {
                mode: mode.as_str(),
                paired: false,
                f1_average: config.f1_average,
                report: &report,
            })?,
        )?;
        write_atomic(&config.output_dir.join("cv_folds.csv"), &folds_csv)?;

        println!(
            "{} folds ({}): mean {} F1 {:.4} +- {:.4}; wrote cv_report.json, cv_folds.csv to {}",
            report.folds.len(),
            mode.as_str(),
            config.f1_average,
            report.mean_f1,
            report.stddev_f1,
            config.output_dir.display()
        );
    }
    Ok(())
}
